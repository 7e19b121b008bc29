import json
import math

import pytest

from barwaves.cli import main


def run(capsys, *args):
    rc = main(list(args))
    out = capsys.readouterr().out
    return rc, out


def test_solve_json_document(capsys, tmp_path):
    out_path = tmp_path / "solve.json"
    rc = main(["solve", "--material", "cubic", "--tl", "-1", "--vl", "0",
               "--tr", "-2", "--vr", "3.872983346207417",
               "--out", str(out_path)])
    assert rc == 0
    doc = json.loads(out_path.read_text())
    assert doc["material"]["alpha"] == 2
    assert doc["region_label"] == "on-W2"
    assert len(doc["waves"]) == 1
    wave = doc["waves"][0]
    assert wave["kind"] == "shock" and wave["family"] == "forward"
    assert wave["speed_head"] == pytest.approx(1.0 / math.sqrt(15.0),
                                               rel=1e-12)
    assert doc["verification"]["rh_residual"] < 1e-9
    assert doc["verification"]["dissipation_slack"] > 0.0


def test_solve_identical_states(capsys):
    rc, out = run(capsys, "solve", "--material", "cubic",
                  "--tl", "1", "--tr", "1")
    assert rc == 0
    doc = json.loads(out)
    assert doc["waves"] == []
    assert doc["verification"]["dissipation_slack"] is None


def test_solve_zero_velocity_case_in_json(capsys):
    rc, out = run(capsys, "solve", "--material", "cubic",
                  "--tl", "-1", "--tr", "1.6")
    assert rc == 0
    assert json.loads(out)["zero_velocity_case"] == "V"


def test_invalid_material_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"alpha": 1.0, "beta": -1.5, "gamma": 1.0, "n": 1.0, "rho": 1.0}))
    rc = main(["solve", "--material", str(bad), "--tl", "0", "--tr", "1"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "hyperbolicity" in err


def test_solver_failure_exits_3(capsys):
    # tangency (and hence thresholds) are undefined for a linear material
    rc = main(["thresholds", "--material", "linear", "--tl", "-1"])
    assert rc == 3


def test_profile_csv(capsys, tmp_path):
    out_path = tmp_path / "prof.csv"
    rc = main(["profile", "--material", "cubic", "--tl", "-0.5",
               "--tr", "-1.0", "--xi-min", "-2", "--xi-max", "2",
               "--count", "101", "--out", str(out_path)])
    assert rc == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "xi,T,v"
    # fan head/tail plus the shock: three inserted edges
    assert len(lines) - 1 == 101 + 3
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(-0.5, abs=1e-12)


def test_profile_constant_data_two_lines(capsys):
    rc, out = run(capsys, "profile", "--material", "cubic",
                  "--tl", "0.3", "--vl", "1", "--tr", "0.3", "--vr", "1",
                  "--count", "2")
    assert rc == 0
    lines = out.strip().split("\n")
    assert len(lines) == 3  # header + two rows
    for row in lines[1:]:
        xi, T, v = row.split(",")
        assert float(T) == 0.3 and float(v) == 1.0


def test_atlas_small_grid(capsys, tmp_path):
    out_path = tmp_path / "atlas.csv"
    rc = main(["atlas", "--material", "cubic", "--res", "9",
               "--out", str(out_path)])
    assert rc == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "T_l,T_r,case_label,region_label"
    assert lines[-1].startswith("# distinct_case_labels=")
    rows = [line.split(",") for line in lines[1:-1]]
    assert len(rows) == 81
    cases = {r[2] for r in rows}
    allowed = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX",
               "X", "XI", "XII", "-"}
    assert cases <= allowed
    # diagonal flagged
    diag = [r for r in rows if r[0] == r[1]]
    assert diag and all(r[2] == "-" for r in diag)


def test_atlas_rows_match_individual_solves(capsys, tmp_path):
    out_path = tmp_path / "atlas.csv"
    main(["atlas", "--material", "cubic", "--res", "5",
          "--tl-min", "-1", "--tl-max", "1", "--tr-min", "-2",
          "--tr-max", "2", "--out", str(out_path)])
    rows = [line.split(",") for line
            in out_path.read_text().strip().split("\n")[1:-1]]
    for T_l, T_r, case, region in rows[:8]:
        if case == "-":
            continue
        rc, out = run(capsys, "solve", "--material", "cubic",
                      "--tl", T_l, "--tr", T_r)
        doc = json.loads(out)
        assert doc["zero_velocity_case"] == case
        assert doc["region_label"] == region


def test_atlas_byte_stable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["atlas", "--material", "cubic", "--res", "7"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_solve_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["solve", "--material", "quintic", "--tl", "-0.8", "--vl", "0.7",
            "--tr", "1.1", "--vr", "-0.4"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_quick_pass(capsys):
    rc, out = run(capsys, "verify", "--material", "cubic",
                  "--seed", "1", "--trials", "20")
    assert rc == 0
    assert "all checks passed" in out
    assert "rh-residual" in out and "fv-refinement" in out


def test_verify_zero_trials_vacuous(capsys):
    rc, out = run(capsys, "verify", "--material", "cubic", "--trials", "0")
    assert rc == 0


def test_verify_inject_fails(capsys):
    rc, out = run(capsys, "verify", "--material", "cubic",
                  "--seed", "1", "--trials", "5", "--inject")
    assert rc == 1
    assert "FAILED: rh-residual" in out


def test_thresholds_json(capsys):
    rc, out = run(capsys, "thresholds", "--material", "cubic", "--tl", "-1")
    assert rc == 0
    doc = json.loads(out)
    assert doc["T_star"] == pytest.approx(1.0, abs=1e-12)
    assert doc["T_star_star"] == pytest.approx(1.4057, abs=1e-3)
    assert doc["tangent_stress"] == pytest.approx(0.5, rel=1e-10)


def test_float_formatting_round_trips(capsys):
    rc, out = run(capsys, "solve", "--material", "quintic",
                  "--tl", "-0.7", "--vl", "0.123456789012345678",
                  "--tr", "0.9", "--vr", "-0.25")
    doc = json.loads(out)
    # 17 significant digits reproduce the double exactly
    assert doc["left"]["v"] == 0.123456789012345678
