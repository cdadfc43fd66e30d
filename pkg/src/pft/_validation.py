"""Input validation helpers shared by the functional API and the estimators."""

import math
import numbers

import numpy as np

from .errors import PftError


def check_int(value, name, *, minimum=None):
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral):
        raise PftError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise PftError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_finite_real(value, name):
    if not isinstance(value, numbers.Real) or not math.isfinite(value):
        raise PftError(f"{name} must be a finite real number, got {value!r}")
    return float(value)


def check_epsilon(epsilon):
    epsilon = check_finite_real(epsilon, "epsilon")
    if epsilon <= 0:
        raise PftError(f"epsilon must be positive, got {epsilon}")
    return epsilon


def check_half_width(N, M):
    """M must satisfy 0 <= M <= N/2."""
    M = check_int(M, "M", minimum=0)
    if 2 * M > N:
        raise PftError(f"M={M} exceeds N/2 for N={N}")
    return M


def check_signal(a, n=None, *, ndim=1, name="a", allow_real=False, check_finite=True):
    """Return ``a`` as a C-contiguous complex128 array of the expected shape.

    With ``allow_real`` a real input stays float64. The input is copied only
    when a dtype or layout conversion is needed; callers never mutate the
    result in place.
    """
    try:
        arr = np.asarray(a)
    except (TypeError, ValueError) as exc:
        raise PftError(f"{name} is not array-like: {exc}") from None
    if arr.dtype == object or not (
        np.issubdtype(arr.dtype, np.number) or arr.dtype == bool
    ):
        raise PftError(f"{name} must be numeric, got dtype {arr.dtype}")
    real = allow_real and not np.iscomplexobj(arr)
    arr = np.ascontiguousarray(arr, dtype=np.float64 if real else np.complex128)
    if arr.ndim != ndim:
        raise PftError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise PftError(f"{name} is empty")
    if n is not None and arr.shape != tuple(np.atleast_1d(n)):
        raise PftError(f"{name} has shape {arr.shape}, expected {tuple(np.atleast_1d(n))}")
    if check_finite and not np.all(np.isfinite(arr)):
        raise PftError(f"{name} contains non-finite entries")
    return arr
