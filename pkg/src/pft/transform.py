"""Computation phase: reshape, multiply by B, batch FFT, weighted post-sum."""

from dataclasses import dataclass

import numpy as np

from . import fft as _fft
from ._validation import check_signal
from .errors import PftError

fft = _fft.fft
batch_fft_columns = _fft.batch_fft_columns


@dataclass(frozen=True)
class TargetRange:
    """Integer frequencies ``mu - M .. mu + M``."""

    mu: int
    M: int

    def __post_init__(self):
        if self.M < 0:
            raise PftError(f"half-width M must be non-negative, got {self.M}")

    @property
    def indices(self):
        return np.arange(self.mu - self.M, self.mu + self.M + 1)

    def __len__(self):
        return 2 * self.M + 1

    def slot(self, m):
        return m - (self.mu - self.M)


@dataclass(frozen=True, eq=False)
class PartialSpectrum:
    values: np.ndarray
    range: TargetRange
    plan: object = None

    def __post_init__(self):
        if self.values.shape != (len(self.range),):
            raise PftError(
                f"{self.values.shape[0]} values do not fill a range of {len(self.range)}"
            )

    @property
    def indices(self):
        return self.range.indices

    def __getitem__(self, m):
        return self.values[self.range.slot(m)]


@dataclass(frozen=True, eq=False)
class PartialSpectrum2d:
    """Grid of coefficients over the rectangle ``range1 x range2``."""

    values: np.ndarray
    range1: TargetRange
    range2: TargetRange
    plan: object = None

    def __post_init__(self):
        if self.values.shape != (len(self.range1), len(self.range2)):
            raise PftError(
                f"grid of shape {self.values.shape} does not match the target rectangle"
            )


def matmul(A, B):
    """Dense product ``A @ B`` with shape checks.

    A real ``A`` times a complex ``B`` is done as one real product against
    ``[Re B | Im B]`` so ``A`` is never upcast.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise PftError(f"cannot multiply shapes {A.shape} and {B.shape}")
    if np.iscomplexobj(B) and not np.iscomplexobj(A):
        r = B.shape[1]
        S = A @ np.hstack([B.real, B.imag])
        return S[:, :r] + 1j * S[:, r:]
    return A @ B


def execute_many(plan, X, check_finite=True):
    """Apply ``plan`` to each row of ``X`` (shape ``(n, N)``); returns ``(n, 2M+1)``."""
    X = check_signal(X, ndim=2, name="X", allow_real=True, check_finite=check_finite)
    n, N = X.shape
    if N != plan.N:
        raise PftError(f"signal length {N} does not match plan N={plan.N}")
    p, q, r = plan.p, plan.q, plan.r
    # A[k, l] = a[q*k + l] for every row, stacked vertically
    C = matmul(X.reshape(n * p, q), plan.B)
    C = np.ascontiguousarray(C.reshape(n, p, r).transpose(1, 0, 2)).reshape(p, n * r)
    C_hat = plan.fft_plan.forward(C).reshape(p, n, r)
    # c_hat is p-periodic in m; Python's % already yields the non-negative residue
    G = C_hat[plan.indices % p]
    powers = plan.post_powers
    acc = G[:, :, 0] * powers[:, None, 0]
    for j in range(1, r):
        acc += G[:, :, j] * powers[:, None, j]
    acc *= plan.post_twiddles[:, None]
    return np.ascontiguousarray(acc.T)


def execute(plan, a, check_finite=True):
    """Estimated coefficients of ``a`` on the plan's target range.

    ``a`` is read, never written, so one plan can serve concurrent calls.
    """
    a = check_signal(a, plan.N, allow_real=True, check_finite=check_finite)
    values = execute_many(plan, a[None, :], check_finite=False)[0]
    return PartialSpectrum(values, TargetRange(plan.mu, plan.M), plan)
