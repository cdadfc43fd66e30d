"""Configuration phase: divisor choice, term count and the precomputed B matrix.

Everything here depends only on ``(N, M, mu, p, epsilon)``, never on the
data, so a plan is built once and reused for any number of inputs.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import fft as _fft
from ._validation import check_epsilon, check_half_width, check_int
from .errors import PftError, RatioOutOfRange
from .minimax import default_table

DEFAULT_EPSILON = 1e-8
SMOOTHNESS_BASES = (2, 3, 5, 7)


def divisors(N):
    """All positive divisors of ``N`` in increasing order."""
    N = check_int(N, "N", minimum=1)
    small, large = [], []
    d = 1
    while d * d <= N:
        if N % d == 0:
            small.append(d)
            if d * d != N:
                large.append(N // d)
        d += 1
    return small + large[::-1]


def smoothness(N):
    """Largest prime factor of ``N`` (1 for ``N == 1``)."""
    return _fft.factorize(N)[-1] if N > 1 else 1


def in_divisor_window(p, M, b):
    """``M / sqrt(b) <= p < sqrt(b) * M``, compared in exact integers."""
    return b * p * p >= M * M and p * p < b * M * M


@dataclass(frozen=True)
class CostEstimate:
    p: int
    r: int
    cost: float


def estimate_cost(N, M, p, r):
    return r * (N + p * math.log2(max(p, 2)) + M)


def min_terms(epsilon, M, p, table=None):
    """Smallest tabulated ``r`` whose scope covers ``M / p``."""
    table = default_table() if table is None else table
    ratio = M / p
    for r in table.r_values(epsilon):
        if table.xi(epsilon, r) >= ratio:
            return r
    raise RatioOutOfRange(
        f"M/p = {M}/{p} = {ratio:.6g} exceeds every tabulated scope for epsilon={epsilon}"
    )


def select_divisor(N, M, table=None, epsilon=DEFAULT_EPSILON):
    """Divisor ``p > 1`` of ``N`` minimising ``r * (N + p log2 p + M)``.

    Ties go to the smaller ``p``. For ``M == 0`` the smallest divisor above 1
    is returned with ``r == 1``.
    """
    N = check_int(N, "N", minimum=1)
    M = check_int(M, "M", minimum=0)
    epsilon = check_epsilon(epsilon)
    table = default_table() if table is None else table
    if N == 1:
        raise PftError("N = 1 admits no non-trivial split")
    if M > N:
        raise PftError(f"M={M} exceeds N={N}")
    candidates = divisors(N)[1:]
    if M == 0:
        p = candidates[0]
        r = min_terms(epsilon, 0, p, table)
        return p, CostEstimate(p, r, estimate_cost(N, 0, p, r))

    b = smoothness(N)
    if b <= SMOOTHNESS_BASES[-1] and not any(in_divisor_window(d, M, b) for d in divisors(N)):
        raise AssertionError(f"no divisor of {b}-smooth N={N} near M={M}")

    best = None
    for p in candidates:
        try:
            r = min_terms(epsilon, M, p, table)
        except RatioOutOfRange:
            continue
        est = CostEstimate(p, r, estimate_cost(N, M, p, r))
        if best is None or est.cost < best.cost:
            best = est
    if best is None:
        raise RatioOutOfRange(f"no divisor of N={N} keeps M/p within the table for M={M}")
    return best.p, best


@dataclass(frozen=True, eq=False)
class PftPlan:
    """Frozen output of the configuration phase; safe to share across calls."""

    N: int
    M: int
    mu: int
    p: int
    q: int
    r: int
    epsilon: float
    achieved_epsilon: float
    B: np.ndarray
    post_powers: np.ndarray
    post_twiddles: np.ndarray
    cost: float

    @property
    def indices(self):
        return np.arange(self.mu - self.M, self.mu + self.M + 1)

    @property
    def fft_plan(self):
        return _fft.get_plan(self.p)

    def summary(self):
        return {
            "N": self.N,
            "M": self.M,
            "mu": self.mu,
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "epsilon": self.epsilon,
            "achieved_epsilon": self.achieved_epsilon,
            "estimated_cost": self.cost,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.summary(), **kwargs)


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def b_matrix(N, q, mu, coeffs):
    """``B[l, j] = exp(-2 pi i mu (l - q/2) / N) * w_j * (1 - 2l/q)**j``."""
    l = np.arange(q, dtype=np.int64)
    # -2 pi mu (l - q/2) / N == pi * mu (q - 2l) / N; the phase has period 2N in mu
    phase = np.exp(1j * np.pi * (((mu % (2 * N)) * (q - 2 * l)) % (2 * N)) / N)
    s = (q - 2 * l) / q
    powers = s[:, None] ** np.arange(len(coeffs))
    return phase[:, None] * powers * np.asarray(coeffs)[None, :]


def post_factors(M, mu, p, r):
    """``((m - mu)/p)**j`` and ``exp(-pi i m / p)`` for m in [mu - M, mu + M]."""
    m = np.arange(mu - M, mu + M + 1, dtype=np.int64)
    powers = ((m - mu) / p)[:, None] ** np.arange(r)
    twiddles = np.exp(-1j * np.pi * (m % (2 * p)) / p)
    return powers, twiddles


def build_plan(N, M, mu=0, p=None, epsilon=DEFAULT_EPSILON, table=None):
    """Configuration phase for the target range ``[mu - M, mu + M]``."""
    N = check_int(N, "N", minimum=1)
    M = check_half_width(N, M)
    mu = check_int(mu, "mu")
    epsilon = check_epsilon(epsilon)
    table = default_table() if table is None else table
    eps_key = table.match_epsilon(epsilon)
    if p is None:
        if N == 1:
            p = 1
        else:
            p, _ = select_divisor(N, M, table, eps_key)
    else:
        p = check_int(p, "p", minimum=1)
        if N % p:
            raise PftError(f"p={p} does not divide N={N}")
    q = N // p
    r = min_terms(eps_key, M, p, table)
    poly = table.poly(eps_key, r)
    powers, twiddles = post_factors(M, mu, p, r)
    return PftPlan(
        N=N,
        M=M,
        mu=mu,
        p=p,
        q=q,
        r=r,
        epsilon=eps_key,
        achieved_epsilon=poly.achieved_error,
        B=_frozen(b_matrix(N, q, mu, poly.coeffs)),
        post_powers=_frozen(powers),
        post_twiddles=_frozen(twiddles),
        cost=estimate_cost(N, M, p, r),
    )
