import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pft.errors import PftError
from pft.minimax import default_table
from pft.oracle import naive_dft_2d, relative_l2, error_bound
from pft.pft2d import Parenthesization, Pft2dPlan, build_plan_2d, choose_parenthesization, execute_2d
from pft.planner import build_plan, divisors
from pft.transform import TargetRange, execute

TABLE = default_table()


def test_symmetric_case_ties_left():
    plan = build_plan_2d(64, 64, 4, 4, 0, 0, 8, 8, 1e-6)
    assert plan.parenthesization is Parenthesization.LEFT_FIRST


def test_small_square_plan():
    plan = build_plan_2d(64, 64, 4, 4, epsilon=1e-6)
    for d in (plan.dim1, plan.dim2):
        assert d.p * d.q == 64
        assert TABLE.xi(1e-6, d.r) >= 4 / d.p


def test_order_choice_example():
    assert choose_parenthesization(8, 4, 4, 2) is Parenthesization.RIGHT_FIRST


@given(st.integers(1, 50), st.integers(1, 25), st.integers(1, 50), st.integers(1, 25))
def test_order_rule(q1, r1, q2, r2):
    left = q2 * r1 * (q1 + r2) <= q1 * r2 * (q2 + r1)
    expected = Parenthesization.LEFT_FIRST if left else Parenthesization.RIGHT_FIRST
    assert choose_parenthesization(q1, r1, q2, r2) is expected


def test_impulse_all_ones():
    a = np.zeros((48, 40))
    a[0, 0] = 1
    plan = build_plan_2d(48, 40, 5, 3, epsilon=1e-6)
    out = execute_2d(plan, a).values
    eps = plan.epsilon
    assert np.max(np.abs(out - 1)) <= eps * eps + 2 * eps


def test_separable(rng):
    f = rng.standard_normal(60)
    g = rng.standard_normal(36) + 1j * rng.standard_normal(36)
    plan = build_plan_2d(60, 36, 6, 4, 2, -1, epsilon=1e-6)
    out = execute_2d(plan, np.outer(f, g)).values
    expected = np.outer(np.fft.fft(f)[np.arange(-4, 9) % 60], np.fft.fft(g)[np.arange(-5, 4) % 36])
    eps = plan.achieved_epsilon
    assert np.max(np.abs(out - expected)) <= np.abs(f).sum() * np.abs(g).sum() * (eps * eps + 2 * eps)


def test_random_grid_relative_error(rng):
    a = rng.random((128, 128))
    plan = build_plan_2d(128, 128, 8, 8, 5, -3)
    est = execute_2d(plan, a)
    exact = naive_dft_2d(a, est.range1, est.range2)
    assert relative_l2(exact.values, est.values) < 1e-6


def test_orders_agree(rng):
    a = rng.standard_normal((72, 50)) + 1j * rng.standard_normal((72, 50))
    base = build_plan_2d(72, 50, 6, 5, 3, 9, 12, 10, epsilon=1e-6)
    flipped = Pft2dPlan(base.dim1, base.dim2, Parenthesization.RIGHT_FIRST
                        if base.parenthesization is Parenthesization.LEFT_FIRST
                        else Parenthesization.LEFT_FIRST)
    x = execute_2d(base, a).values
    y = execute_2d(flipped, a).values
    assert relative_l2(x, y) < 1e-10


def test_matches_1d_on_rows(rng):
    a = rng.standard_normal((30, 1)) + 0j
    plan = build_plan_2d(30, 1, 4, 0, 2, 0, 6, None, epsilon=1e-6)
    out = execute_2d(plan, a).values[:, 0]
    one_d = execute(build_plan(30, 4, 2, 6, 1e-6), a[:, 0]).values
    eps = plan.achieved_epsilon
    assert np.max(np.abs(out - one_d)) <= 2 * np.abs(a).sum() * (eps * eps + 2 * eps)


@given(st.data())
def test_error_within_bound(data):
    N1 = data.draw(st.integers(2, 96))
    N2 = data.draw(st.integers(2, 96))
    M1 = data.draw(st.integers(0, N1 // 2))
    M2 = data.draw(st.integers(0, N2 // 2))
    p1 = data.draw(st.sampled_from(divisors(N1)[1:]))
    p2 = data.draw(st.sampled_from(divisors(N2)[1:]))
    eps = data.draw(st.sampled_from([1e-2, 1e-4, 1e-6]))
    try:
        plan = build_plan_2d(N1, N2, M1, M2, data.draw(st.integers(-200, 200)),
                             data.draw(st.integers(-200, 200)), p1, p2, eps)
    except PftError:
        return
    r = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    a = r.standard_normal((N1, N2)) + 1j * r.standard_normal((N1, N2))
    est = execute_2d(plan, a)
    err = np.abs(naive_dft_2d(a, est.range1, est.range2).values - est.values).max()
    assert err <= error_bound(np.abs(a).sum(), plan.achieved_epsilon, two_d=True)


def test_shape_mismatch(rng):
    plan = build_plan_2d(16, 16, 2, 2)
    with pytest.raises(PftError):
        execute_2d(plan, rng.random((16, 8)))
    with pytest.raises(PftError):
        execute_2d(plan, rng.random(256))


def test_nonfinite_rejected():
    plan = build_plan_2d(8, 8, 1, 1)
    a = np.zeros((8, 8))
    a[3, 3] = np.inf
    with pytest.raises(PftError):
        execute_2d(plan, a)


def test_summary():
    s = build_plan_2d(64, 32, 4, 2).summary()
    assert s["dim1"]["N"] == 64 and s["dim2"]["N"] == 32
    assert s["parenthesization"] in {"LEFT_FIRST", "RIGHT_FIRST"}
