"""Two-dimensional partial Fourier transform on a rectangular target range.

Each axis is configured exactly like the 1-D transform, so a 2-D plan is a
pair of 1-D plans plus the order in which the two B matrices are applied to
every ``q1 x q2`` block.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import fft as _fft
from ._validation import check_signal
from .errors import PftError
from .planner import DEFAULT_EPSILON, build_plan
from .transform import PartialSpectrum2d, TargetRange, matmul


class Parenthesization(enum.Enum):
    LEFT_FIRST = "(B1^T A) B2"
    RIGHT_FIRST = "B1^T (A B2)"


def choose_parenthesization(q1, r1, q2, r2):
    """Cheaper evaluation order of ``B1^T A B2``; ties go left-first."""
    left = q2 * r1 * (q1 + r2)
    right = q1 * r2 * (q2 + r1)
    return Parenthesization.LEFT_FIRST if left <= right else Parenthesization.RIGHT_FIRST


@dataclass(frozen=True, eq=False)
class Pft2dPlan:
    dim1: object
    dim2: object
    parenthesization: Parenthesization

    @property
    def shape(self):
        return (self.dim1.N, self.dim2.N)

    @property
    def epsilon(self):
        return self.dim1.epsilon

    @property
    def achieved_epsilon(self):
        """Larger of the two per-axis certified errors."""
        return max(self.dim1.achieved_epsilon, self.dim2.achieved_epsilon)

    def summary(self):
        return {
            "dim1": self.dim1.summary(),
            "dim2": self.dim2.summary(),
            "parenthesization": self.parenthesization.name,
        }


def build_plan_2d(N1, N2, M1, M2, mu1=0, mu2=0, p1=None, p2=None,
                  epsilon=DEFAULT_EPSILON, table=None):
    dim1 = build_plan(N1, M1, mu1, p1, epsilon, table)
    dim2 = build_plan(N2, M2, mu2, p2, epsilon, table)
    order = choose_parenthesization(dim1.q, dim1.r, dim2.q, dim2.r)
    return Pft2dPlan(dim1, dim2, order)


def _block_products(plan, a):
    """``C[k1, k2] = B1^T A[k1, k2] B2`` for every block; shape (p1, p2, r1, r2)."""
    d1, d2 = plan.dim1, plan.dim2
    p1, q1, r1 = d1.p, d1.q, d1.r
    p2, q2, r2 = d2.p, d2.q, d2.r
    # blocks[k1, l1, k2, l2] = a[q1*k1 + l1, q2*k2 + l2]
    blocks = a.reshape(p1, q1, p2, q2)
    if plan.parenthesization is Parenthesization.LEFT_FIRST:
        t = blocks.transpose(0, 2, 3, 1).reshape(-1, q1)            # (k1 k2 l2, l1)
        t = matmul(t, d1.B).reshape(p1, p2, q2, r1)                 # (k1, k2, l2, j1)
        t = t.transpose(0, 1, 3, 2).reshape(-1, q2)                 # (k1 k2 j1, l2)
        return matmul(t, d2.B).reshape(p1, p2, r1, r2)
    t = blocks.transpose(0, 2, 1, 3).reshape(-1, q2)                # (k1 k2 l1, l2)
    t = matmul(t, d2.B).reshape(p1, p2, q1, r2)                     # (k1, k2, l1, j2)
    t = t.transpose(0, 1, 3, 2).reshape(-1, q1)                     # (k1 k2 j2, l1)
    t = matmul(t, d1.B).reshape(p1, p2, r2, r1)
    return t.transpose(0, 1, 3, 2)


def execute_2d(plan, a, check_finite=True):
    """Estimated 2-D coefficients of ``a`` over the plan's rectangle."""
    a = check_signal(a, plan.shape, ndim=2, allow_real=True, check_finite=check_finite)
    d1, d2 = plan.dim1, plan.dim2
    C = _block_products(plan, a)
    C_hat = _fft.fft(_fft.fft(C, axis=0), axis=1)
    G = C_hat[d1.indices % d1.p][:, d2.indices % d2.p]              # (x, y, j1, j2)
    H = np.einsum("xyab,yb->xya", G, d2.post_powers)
    values = np.einsum("xya,xa->xy", H, d1.post_powers)
    values *= d1.post_twiddles[:, None] * d2.post_twiddles[None, :]
    if values.shape != (2 * d1.M + 1, 2 * d2.M + 1):
        raise PftError("internal shape error in 2-D post-processing")
    return PartialSpectrum2d(values, TargetRange(d1.mu, d1.M), TargetRange(d2.mu, d2.M), plan)
