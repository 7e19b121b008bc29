"""Shared fixtures and independent oracles for the test suite.

The cubic preset (alpha=2, beta=-1, gamma=2, n=1, rho=1) has
strain = T + 2*T**3, so most quantities admit elementary closed forms that
are computed here independently of the library's quadrature/root-finding
paths and frozen into the tests.
"""

import math

import pytest

from barwaves import Material, PRESETS


@pytest.fixture(scope="session")
def cubic():
    return PRESETS["cubic"]


@pytest.fixture(scope="session")
def quintic():
    return PRESETS["quintic"]


@pytest.fixture(scope="session")
def linear():
    return PRESETS["linear"]


def cubic_strain(T):
    return T + 2.0 * T ** 3


def cubic_strain_prime(T):
    return 1.0 + 6.0 * T * T


def cubic_fan_antiderivative(T):
    """Exact antiderivative of sqrt(1 + 6*tau**2) (rho = 1)."""
    r = math.sqrt(6.0)
    return 0.5 * T * math.sqrt(1.0 + 6.0 * T * T) + math.asinh(r * T) / (2.0 * r)


def cubic_fan_integral(a, b):
    """Closed-form velocity change across a cubic-material fan."""
    return cubic_fan_antiderivative(b) - cubic_fan_antiderivative(a)


def make_material(alpha, beta, gamma, n, rho):
    return Material(alpha=alpha, beta=beta, gamma=gamma, n=n, rho=rho)
