"""Exact solver for the two-state initial value problem of the bar.

The self-similar solution is a backward elementary wave from the left state
to a middle state, followed by a forward elementary wave to the right state.
Velocity is strictly increasing along the backward curve and strictly
decreasing along every forward curve, so the predicted right-state velocity
is strictly increasing in the middle stress and a bracketed root finder
pins the middle state; the sampled residuals are checked for monotonicity
on every call instead of assuming it.

Region labels: the phase plane around a left state with T_l < 0 splits into
twelve regions A1..A12 (B1..B12 for T_l > 0, C1..C6 for T_l = 0) according
to the kind of each wave and the sign of the middle stress.  A right state
within 1e-9 (in velocity) of a dividing curve gets a boundary label instead.
Labels are derived from the constructed pattern, never from a separate
geometric test, so label and pattern cannot disagree.

For the experiment with both initial velocities zero, the solution type is
a function of the initial stresses alone, classified I..XII by comparing
the right stress against two thresholds (see ``thresholds``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import NoBracket, NonMonotone, RootNotBracketed
from .material import (
    BACKWARD,
    FORWARD,
    Material,
    strain,
    strain_prime,
    tangent_point,
    wave_speed,
)
from .wave_curves import (
    RAREFACTION,
    SHOCK,
    CurveLeg,
    State,
    backward_dv,
    backward_v,
    decompose_backward,
    decompose_forward,
    forward_delta,
    forward_delta_dstart,
    forward_v,
    shock_speed,
)

#: Velocity distance below which a right state counts as lying on a
#: dividing curve of the phase plane.
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class Wave:
    kind: str            # RAREFACTION or SHOCK
    family: str          # BACKWARD or FORWARD
    left: State
    right: State
    speed_head: float
    speed_tail: float    # equal to speed_head for shocks
    degenerate: str = ""


@dataclass(frozen=True)
class Thresholds:
    """Stress thresholds separating the zero-velocity solution types.

    For T_l < 0: 0 < T_star < T_star_star, and T_star equals -T_l exactly
    (the odd strain makes T*strain(T) even).  Mirrored for T_l > 0.
    """
    T_star: float
    T_star_star: float


@dataclass(frozen=True)
class WavePattern:
    material: Material
    left_state: State
    waves: tuple[Wave, ...]
    middle_states: tuple[State, ...]
    region_label: str
    zero_velocity_case: str | None = None

    @property
    def right_state(self) -> State:
        if self.waves:
            return self.waves[-1].right
        return self.left_state

    def shocks(self) -> list[Wave]:
        return [w for w in self.waves if w.kind == SHOCK]


def _wave_from_leg(m: Material, leg: CurveLeg) -> Wave:
    if leg.kind == SHOCK:
        s = shock_speed(m, leg.start.T, leg.end.T, leg.family)
        return Wave(SHOCK, leg.family, leg.start, leg.end, s, s,
                    leg.degenerate)
    head = wave_speed(m, leg.start.T, leg.family)
    tail = wave_speed(m, leg.end.T, leg.family)
    return Wave(RAREFACTION, leg.family, leg.start, leg.end, head, tail,
                leg.degenerate)


def _find_middle_stress(m: Material, U_l: State, U_r: State) -> float:
    scale = max(1.0, abs(U_l.v), abs(U_r.v))
    samples: list[tuple[float, float]] = []

    def g(T_bar: float) -> float:
        val = (backward_v(m, U_l, T_bar)
               + forward_delta(m, T_bar, U_r.T) - U_r.v)
        samples.append((T_bar, val))
        return val

    # Expanding bracket around T_l; the residual is strictly increasing and
    # unbounded both ways, so a sign change always exists.
    step = 1.0
    lo, hi = U_l.T - step, U_l.T + step
    g_lo, g_hi = g(lo), g(hi)
    for _ in range(60):
        if g_lo <= 0.0 <= g_hi:
            break
        step *= 2.0
        if g_lo > 0.0:
            lo -= step
            g_lo = g(lo)
        if g_hi < 0.0:
            hi += step
            g_hi = g(hi)
    else:
        raise NoBracket(
            f"no bracket for middle stress between {lo} and {hi}")

    if g_lo == 0.0:
        root = lo
    elif g_hi == 0.0:
        root = hi
    else:
        root = brentq(g, lo, hi, xtol=1e-14, rtol=8.882e-16, maxiter=200)

    # Newton polish down to the velocity-residual target.
    tol = 1e-12 * scale
    for _ in range(8):
        val = (backward_v(m, U_l, root)
               + forward_delta(m, root, U_r.T) - U_r.v)
        if abs(val) <= tol:
            break
        deriv = (backward_dv(m, U_l, root)
                 + forward_delta_dstart(m, root, U_r.T))
        if not deriv > 0.0:
            break
        root -= val / deriv

    samples.sort(key=lambda p: p[0])
    slack = 1e-8 * scale
    for (_, v_a), (_, v_b) in zip(samples, samples[1:]):
        if v_b < v_a - slack:
            raise NonMonotone(
                "sampled residuals are not monotone in the middle stress")
    final = (backward_v(m, U_l, root)
             + forward_delta(m, root, U_r.T) - U_r.v)
    if abs(final) > 1e-11 * scale:
        raise NoBracket(
            f"middle-stress residual {final} misses the tolerance")
    return root


def _leg_summary(legs: list[CurveLeg]) -> str:
    """Collapse a leg list to 'R', 'S', 'SR', 'X' or ''.

    'X' marks a forward leg that crosses zero stress: either a composite
    (fan plus degenerate shock) or the single shock left after the fan is
    swallowed.  Geometrically both live in the same phase-plane band.
    """
    if not legs:
        return ""
    if len(legs) == 2:
        if legs[0].kind == SHOCK:
            return "SR"
        return "X"
    leg = legs[0]
    if leg.kind == RAREFACTION:
        return "R"
    if leg.family == FORWARD and leg.start.T * leg.end.T < 0.0:
        return "X"
    return "S"


_REGION_MAPS = {
    # (backward summary, forward summary) -> label, possibly split on the
    # sign of the middle stress.
    "A": {("R", "S"): "A1", ("R", "R"): "A2", ("R", "X"): "A3",
          ("S", "S"): ("A4", "A9"), ("S", "R"): ("A5", "A8"),
          ("S", "X"): ("A6", "A7"),
          ("SR", "S"): "A12", ("SR", "R"): "A11", ("SR", "X"): "A10"},
    "B": {("SR", "S"): "B1", ("SR", "R"): "B2", ("SR", "X"): "B3",
          ("S", "S"): ("B4", "B9"), ("S", "R"): ("B5", "B8"),
          ("S", "X"): ("B6", "B7"),
          ("R", "S"): "B12", ("R", "R"): "B11", ("R", "X"): "B10"},
    "C": {("R", "S"): ("C6", "C1"), ("R", "R"): ("C5", "C2"),
          ("R", "X"): ("C3", "C4")},
}


def _region_label(m: Material, U_l: State, U_r: State, T_bar: float,
                  back: list[CurveLeg], fwd: list[CurveLeg]) -> str:
    # Dividing-curve membership first (tolerance in velocity).
    if abs(U_r.v - backward_v(m, U_l, U_r.T)) <= BOUNDARY_TOL:
        return "on-W1"
    if abs(U_r.v - forward_v(m, U_l, U_r.T)) <= BOUNDARY_TOL:
        return "on-W2"
    if U_l.T != 0.0:
        zero_pt = State(0.0, backward_v(m, U_l, 0.0))
        if abs(U_r.v - forward_v(m, zero_pt, U_r.T)) <= BOUNDARY_TOL:
            return "on-W2F" if U_l.T < 0.0 else "on-W2E"
        Tt = tangent_point(m, U_l.T)
        tgt_pt = State(Tt, backward_v(m, U_l, Tt))
        if abs(U_r.v - forward_v(m, tgt_pt, U_r.T)) <= BOUNDARY_TOL:
            return "on-W2B" if U_l.T < 0.0 else "on-W2C"
    if abs(U_r.T) <= BOUNDARY_TOL:
        return "on-T0"

    system = "A" if U_l.T < 0.0 else ("B" if U_l.T > 0.0 else "C")
    key = (_leg_summary(back), _leg_summary(fwd))
    entry = _REGION_MAPS[system].get(key)
    if entry is None:
        return "unclassified"
    if isinstance(entry, tuple):
        neg, pos = entry
        return neg if T_bar < 0.0 else pos
    return entry


def thresholds(m: Material, T_l: float) -> Thresholds:
    """Zero-velocity stress thresholds for a left stress of the given sign.

    T_star solves T*strain(T) = T_l*strain(T_l) on the opposite side of
    zero (hence equals -T_l); T_star_star solves the equal-velocity
    condition (T - Tt)(strain(T) - strain(Tt)) = (Tt - T_l)**2 *
    strain_prime(Tt) beyond the tangency stress Tt of T_l.
    """
    if T_l == 0.0:
        raise ValueError("thresholds require a nonzero left stress")
    if T_l > 0.0:
        mirrored = thresholds(m, -T_l)
        return Thresholds(-mirrored.T_star, -mirrored.T_star_star)

    target = T_l * strain(m, T_l)

    def h(T):
        return T * strain(m, T) - target

    T_star = _increasing_root(h, 1e-8, max(2.0 * abs(T_l), 1.0),
                              what="equal-jump threshold")
    # Newton polish; d/dT [T*strain] = strain + T*strain_prime.
    for _ in range(3):
        hp = strain(m, T_star) + T_star * strain_prime(m, T_star)
        if hp == 0.0:
            break
        T_star -= h(T_star) / hp

    Tt = tangent_point(m, T_l)
    eps_t = strain(m, Tt)
    rhs = (Tt - T_l) ** 2 * strain_prime(m, Tt)

    def k(T):
        return (T - Tt) * (strain(m, T) - eps_t) - rhs

    T_ss = _increasing_root(k, Tt * (1.0 + 1e-12) + 1e-12,
                            max(4.0 * abs(T_l), 2.0 * Tt, 1.0),
                            what="equal-velocity threshold")
    for _ in range(3):
        kp = (strain(m, T_ss) - eps_t) + (T_ss - Tt) * strain_prime(m, T_ss)
        if kp == 0.0:
            break
        T_ss -= k(T_ss) / kp
    return Thresholds(T_star, T_ss)


def _increasing_root(fn, lo: float, hi: float, what: str) -> float:
    f_lo, f_hi = fn(lo), fn(hi)
    for _ in range(200):
        if f_lo <= 0.0 <= f_hi:
            break
        if f_lo > 0.0:
            lo *= 0.25
            f_lo = fn(lo)
        if f_hi < 0.0:
            hi *= 2.0
            f_hi = fn(hi)
        if hi > 1e150 or (lo != 0.0 and lo < 1e-300):
            raise RootNotBracketed(f"bracket search failed for {what}")
    else:
        raise RootNotBracketed(f"bracket search failed for {what}")
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    return brentq(fn, lo, hi, xtol=1e-15, rtol=8.882e-16, maxiter=200)


def zero_velocity_case(m: Material, T_l: float, T_r: float) -> str | None:
    """Solution type I..XII for data with both velocities zero."""
    if m.linear_mode or T_l == T_r:
        return None
    if T_l == 0.0:
        return "XI" if T_r < 0.0 else "XII"
    if T_l < 0.0:
        if T_r < T_l:
            return "I"
        if T_r <= 0.0:
            return "II"
        th = thresholds(m, T_l)
        if T_r < th.T_star:
            return "III"
        if T_r <= th.T_star_star:
            return "IV"
        return "V"
    if T_r > T_l:
        return "VI"
    if T_r >= 0.0:
        return "VII"
    th = thresholds(m, T_l)
    if T_r > th.T_star:
        return "VIII"
    if T_r >= th.T_star_star:
        return "IX"
    return "X"


def solve(m: Material, U_l: State, U_r: State) -> WavePattern:
    """Unique admissible self-similar solution joining U_l to U_r."""
    if U_l == U_r:
        return WavePattern(m, U_l, (), (), "trivial")
    if m.linear_mode:
        return solve_linear(m, U_l, U_r)

    # Data on a wave curve solves as the single-family pattern (boundary
    # convention); this also keeps roundoff from leaving a zero-width leg.
    if abs(U_r.v - backward_v(m, U_l, U_r.T)) <= BOUNDARY_TOL:
        T_bar = U_r.T
    elif abs(U_r.v - forward_v(m, U_l, U_r.T)) <= BOUNDARY_TOL:
        T_bar = U_l.T
    else:
        T_bar = _find_middle_stress(m, U_l, U_r)
        snap = 1e-12 * max(1.0, abs(U_l.T), abs(U_r.T))
        if abs(T_bar - U_l.T) <= snap:
            T_bar = U_l.T
        elif abs(T_bar - U_r.T) <= snap:
            T_bar = U_r.T
    back = decompose_backward(m, U_l, T_bar)
    middle = back[-1].end if back else U_l
    fwd = decompose_forward(m, middle, U_r.T)

    waves = tuple(_wave_from_leg(m, leg) for leg in back + fwd)
    middles = tuple(w.right for w in waves[:-1])
    label = _region_label(m, U_l, U_r, T_bar, back, fwd)
    case = None
    if U_l.v == 0.0 and U_r.v == 0.0:
        case = zero_velocity_case(m, U_l.T, U_r.T)
    return WavePattern(m, U_l, waves, middles, label, case)


def solve_zero_velocity(m: Material, T_l: float, T_r: float) -> WavePattern:
    """Riemann solution for the released-bar experiment (velocities zero)."""
    return solve(m, State(T_l, 0.0), State(T_r, 0.0))


def solve_linear(m: Material, U_l: State, U_r: State) -> WavePattern:
    """Closed-form two-contact solution for a linear-mode material."""
    if not m.linear_mode:
        raise ValueError("solve_linear requires a linear_mode material")
    if U_l == U_r:
        return WavePattern(m, U_l, (), (), "trivial")
    k = m.alpha + m.beta
    c = 1.0 / math.sqrt(m.rho * k)
    T_mid = 0.5 * (U_r.T + U_l.T) + 0.5 * math.sqrt(m.rho / k) * (U_r.v - U_l.v)
    v_mid = 0.5 * (U_r.v + U_l.v) + 0.5 * math.sqrt(k / m.rho) * (U_r.T - U_l.T)
    mid = State(T_mid, v_mid)
    waves = []
    if mid != U_l:
        waves.append(Wave(SHOCK, BACKWARD, U_l, mid, -c, -c, "both"))
    if mid != U_r:
        waves.append(Wave(SHOCK, FORWARD, mid, U_r, c, c, "both"))
    middles = tuple(w.right for w in waves[:-1])
    return WavePattern(m, U_l, tuple(waves), middles, "linear")


def classify_region(m: Material, U_l: State, U_r: State) -> str:
    """Region label of U_r relative to U_l; boundary labels within 1e-9."""
    return solve(m, U_l, U_r).region_label
