import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.optimize import linprog

settings.register_profile(
    "pkg", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("pkg")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def lp_minimax_error(r, xi, u, n_points=2001, n_dirs=64):
    """Sup error of the best complex degree ``r-1`` fit to exp(iux) on [-xi, xi].

    Solved as a linear program over real/imaginary coefficient parts: the
    modulus is replaced by the max over ``n_dirs`` projections, which
    under-estimates it by at most a factor cos(pi/n_dirs). The returned value
    is the LP optimum (a lower bound on the true minimax error, up to that
    factor and grid density).
    """
    x = np.linspace(-xi, xi, n_points)
    f = np.exp(1j * u * x)
    V = x[:, None] ** np.arange(r)
    rows, rhs = [], []
    for theta in 2 * np.pi * np.arange(n_dirs) / n_dirs:
        c, s = math.cos(theta), math.sin(theta)
        # Re(e^{-i theta} (P - f)) <= t, with P = V (a + i b)
        block = np.hstack([c * V, s * V, -np.ones((n_points, 1))])
        rows.append(block)
        rhs.append(c * f.real + s * f.imag)
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    cost = np.zeros(2 * r + 1)
    cost[-1] = 1.0
    bounds = [(None, None)] * (2 * r) + [(0, None)]
    res = linprog(cost, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert res.status == 0
    return res.x[-1]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
