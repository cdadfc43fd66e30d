"""Brute-force DFTs and error measures used to check the fast paths."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_signal
from .errors import PftError
from .transform import PartialSpectrum, PartialSpectrum2d, TargetRange

_CHUNK_ELEMS = 1 << 22


def _unit_roots(N):
    # exp(-2 pi i k / N) from the exact angle of each k
    return np.exp(-2j * np.pi * np.arange(N) / N)


def _direct_sum(a, m):
    N = a.size
    roots = _unit_roots(N)
    m = np.asarray(m, dtype=np.int64) % N
    n = np.arange(N, dtype=np.int64)
    out = np.empty(m.size, dtype=np.complex128)
    step = max(1, _CHUNK_ELEMS // N)
    for start in range(0, m.size, step):
        mm = m[start:start + step]
        out[start:start + step] = (roots[(mm[:, None] * n[None, :]) % N] * a).sum(axis=1)
    return out


def naive_dft(a, range):
    """Direct summation of ``sum_n a_n exp(-2 pi i m n / N)`` for m in ``range``.

    Each exponent ``m*n`` is reduced modulo ``N`` in integer arithmetic
    before taking its root of unity, so no phase error accumulates.
    """
    a = check_signal(a)
    return PartialSpectrum(_direct_sum(a, range.indices), range)


def naive_dft_full(a):
    """All N coefficients in the order 0..N-1."""
    a = check_signal(a)
    return _direct_sum(a, np.arange(a.size))


def naive_dft_2d(a, range1, range2):
    """Direct 2-D summation over the rectangle ``range1 x range2``."""
    a = check_signal(a, ndim=2)
    N1, N2 = a.shape
    m1 = range1.indices.astype(np.int64) % N1
    m2 = range2.indices.astype(np.int64) % N2
    E1 = _unit_roots(N1)[(m1[:, None] * np.arange(N1)[None, :]) % N1]
    E2 = _unit_roots(N2)[(m2[:, None] * np.arange(N2)[None, :]) % N2]
    # sum_{n1,n2} E1[m1,n1] a[n1,n2] E2[m2,n2]
    values = np.einsum("xi,ij,yj->xy", E1, a, E2, optimize=False)
    return PartialSpectrum2d(values, range1, range2)


@dataclass(frozen=True)
class ErrorReport:
    relative_l2: float
    max_abs: float
    l1_input: float
    bound: float
    bound_satisfied: bool

    def as_dict(self):
        return {
            "relative_l2": self.relative_l2,
            "max_abs": self.max_abs,
            "l1_input": self.l1_input,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
        }


def error_bound(l1_input, epsilon, two_d=False):
    """``||a||_1 * eps`` in 1-D, ``||a||_1 * (eps^2 + 2 eps)`` in 2-D."""
    return l1_input * (epsilon * epsilon + 2 * epsilon if two_d else epsilon)


def relative_l2(actual, estimate):
    actual = np.asarray(actual)
    estimate = np.asarray(estimate)
    num = float(np.sum(np.abs(actual - estimate) ** 2))
    den = float(np.sum(np.abs(actual) ** 2))
    if den == 0:
        return 0.0 if num == 0 else math.inf
    return math.sqrt(num / den)


def compare(actual, estimate, l1_input, epsilon, two_d_bound=False):
    """Relative l2 and max-abs error of ``estimate`` against ``actual``.

    Accepts 1-D or 2-D spectra; their ranges must agree.
    """
    if isinstance(actual, PartialSpectrum2d) or isinstance(estimate, PartialSpectrum2d):
        same = (actual.range1, actual.range2) == (estimate.range1, estimate.range2)
    else:
        same = actual.range == estimate.range
    if not same:
        raise PftError("spectra cover different target ranges")
    diff = np.abs(actual.values - estimate.values)
    max_abs = float(diff.max()) if diff.size else 0.0
    bound = error_bound(float(l1_input), epsilon, two_d_bound)
    return ErrorReport(
        relative_l2=relative_l2(actual.values, estimate.values),
        max_abs=max_abs,
        l1_input=float(l1_input),
        bound=bound,
        bound_satisfied=max_abs <= bound,
    )
