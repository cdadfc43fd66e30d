import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pft.errors import PftError
from pft.oracle import naive_dft, relative_l2
from pft.planner import build_plan, divisors
from pft.transform import PartialSpectrum, TargetRange, execute, execute_many, matmul


def _plan_case(draw):
    N = draw(st.integers(2, 1024))
    M = draw(st.integers(0, N // 2))
    mu = draw(st.integers(-3 * N, 3 * N))
    ps = [d for d in divisors(N)[1:]]
    p = draw(st.sampled_from(ps))
    eps = draw(st.sampled_from([1e-2, 1e-4, 1e-6]))
    return N, M, mu, p, eps


def _try_plan(N, M, mu, p, eps):
    try:
        return build_plan(N, M, mu, p, eps)
    except PftError:
        return None


def test_impulse_all_ones():
    for N, M, p in [(64, 8, 8), (100, 4, 10), (3947 * 5, 125, 3947)]:
        a = np.zeros(N)
        a[0] = 1
        plan = build_plan(N, M, 0, p)
        out = execute(plan, a).values
        # an impulse makes the bound tight, so compare against the requested tolerance
        assert np.max(np.abs(out - 1)) <= plan.epsilon


def test_single_exponential():
    N, M, mu = 512, 10, 3
    plan = build_plan(N, M, mu)
    for m0 in (-7, 0, 3, 13):
        a = np.exp(2j * np.pi * m0 * np.arange(N) / N)
        out = execute(plan, a)
        expected = np.where(plan.indices == m0, N, 0)
        assert np.max(np.abs(out.values - expected)) <= N * plan.achieved_epsilon


def test_random_case_default_tolerance(rng):
    a = rng.random(256)
    plan = build_plan(256, 16, 37, 32)
    assert relative_l2(naive_dft(a, TargetRange(37, 16)).values, execute(plan, a).values) < 1e-6


@pytest.mark.xfail(strict=True, reason="at epsilon=1e-6 the input mean aliases coherently; see notes")
def test_random_case_at_1e6(rng):
    a = rng.random(256)
    plan = build_plan(256, 16, 37, 32, 1e-6)
    assert relative_l2(naive_dft(a, TargetRange(37, 16)).values, execute(plan, a).values) < 1e-6


def test_random_case_at_1e6_within_bound(rng):
    a = rng.random(256)
    plan = build_plan(256, 16, 37, 32, 1e-6)
    err = np.abs(naive_dft(a, TargetRange(37, 16)).values - execute(plan, a).values)
    assert err.max() <= np.abs(a).sum() * plan.achieved_epsilon


@given(st.data())
def test_error_within_l1_bound(data):
    case = _plan_case(data.draw)
    plan = _try_plan(*case)
    if plan is None:
        return
    seed = data.draw(st.integers(0, 2**31))
    r = np.random.default_rng(seed)
    a = r.standard_normal(plan.N) + 1j * r.standard_normal(plan.N)
    err = np.abs(naive_dft(a, TargetRange(plan.mu, plan.M)).values - execute(plan, a).values)
    assert err.max() <= np.abs(a).sum() * plan.achieved_epsilon


@given(st.data())
def test_linearity(data):
    plan = _try_plan(*_plan_case(data.draw))
    if plan is None:
        return
    r = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    a = r.standard_normal(plan.N) + 1j * r.standard_normal(plan.N)
    b = r.random(plan.N)
    alpha, beta = 0.7 - 0.2j, -1.3
    lhs = execute(plan, alpha * a + beta * b).values
    rhs = alpha * execute(plan, a).values + beta * execute(plan, b).values
    tol = 1e-10 * (np.abs(a).sum() + np.abs(b).sum())
    assert np.max(np.abs(lhs - rhs)) <= tol


@given(st.data())
def test_shift_equivalence(data):
    N, M, mu, p, eps = _plan_case(data.draw)
    shifted = _try_plan(N, M, mu, p, eps)
    centred = _try_plan(N, M, 0, p, eps)
    if shifted is None or centred is None:
        return
    r = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    x = r.standard_normal(N) + 1j * r.standard_normal(N)
    y = x * np.exp(-2j * np.pi * ((mu * np.arange(N)) % N) / N)
    diff = np.abs(execute(shifted, x).values - execute(centred, y).values)
    assert diff.max() <= 2 * np.abs(x).sum() * eps


def test_periodic_wrap(rng):
    N, M, mu = 240, 12, -5
    a = rng.standard_normal(N)
    plan = build_plan(N, M, mu)
    out = execute(plan, a)
    assert np.any(plan.indices < 0)
    full = np.fft.fft(a)
    for m in plan.indices:
        assert abs(out[m] - full[m % N]) <= np.abs(a).sum() * plan.achieved_epsilon


def test_plan_reuse_and_input_untouched(rng):
    plan = build_plan(1024, 20, 7)
    B_before = plan.B.copy()
    a = rng.standard_normal(1024)
    b = rng.standard_normal(1024) + 1j
    a0, b0 = a.copy(), b.copy()
    first = execute(plan, a).values
    execute(plan, b)
    assert np.array_equal(execute(plan, a).values, first)
    assert np.array_equal(plan.B, B_before)
    assert np.array_equal(a, a0) and np.array_equal(b, b0)


def test_many_rows_match_single(rng):
    plan = build_plan(600, 30, -2)
    X = rng.standard_normal((5, 600)) + 1j * rng.standard_normal((5, 600))
    out = execute_many(plan, X)
    for i in range(5):
        np.testing.assert_allclose(out[i], execute(plan, X[i]).values, rtol=0, atol=1e-12)


def test_real_and_complex_paths_agree(rng):
    plan = build_plan(2048, 64, 100)
    a = rng.random(2048)
    np.testing.assert_allclose(execute(plan, a).values, execute(plan, a + 0j).values, atol=1e-10)


def test_zero_halfwidth(rng):
    a = rng.random(90)
    out = execute(build_plan(90, 0, 7), a)
    assert out.values.shape == (1,)
    assert abs(out[7] - np.fft.fft(a)[7]) <= np.abs(a).sum() * 1e-8


def test_length_one():
    out = execute(build_plan(1, 0, 5), np.array([2.5]))
    assert out.values[0] == pytest.approx(2.5)


def test_spectrum_indexing(rng):
    plan = build_plan(64, 3, -10, 8)
    out = execute(plan, rng.random(64))
    assert out.indices.tolist() == list(range(-13, -6))
    assert out[-13] == out.values[0] and out[-7] == out.values[-1]


@pytest.mark.parametrize("bad", [np.ones(63), np.ones((2, 32)), np.array([np.nan] * 64), np.array(["x"] * 64)])
def test_input_errors(bad):
    with pytest.raises(PftError):
        execute(build_plan(64, 3, 0, 8), bad)


def test_spectrum_length_checked():
    with pytest.raises(PftError):
        PartialSpectrum(np.zeros(4, complex), TargetRange(0, 1))


def test_negative_halfwidth_range():
    with pytest.raises(PftError):
        TargetRange(0, -1)


# matmul


def test_matmul_identity(rng):
    A = rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4))
    np.testing.assert_array_equal(matmul(A, np.eye(4, dtype=complex)), A)


def test_matmul_zeros(rng):
    B = rng.standard_normal((4, 3)) + 1j
    assert not np.any(matmul(np.zeros((6, 4)), B))


def test_matmul_triple_loop(rng):
    A = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    B = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    ref = np.zeros((3, 2), complex)
    for i in range(3):
        for j in range(2):
            for k in range(4):
                ref[i, j] += A[i, k] * B[k, j]
    np.testing.assert_allclose(matmul(A, B), ref, atol=1e-14)


def test_matmul_real_left(rng):
    A = rng.standard_normal((7, 5))
    B = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    np.testing.assert_allclose(matmul(A, B), A.astype(complex) @ B, atol=1e-13)


def test_matmul_shape_errors():
    with pytest.raises(PftError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(PftError):
        matmul(np.ones(3), np.ones((3, 1)))
