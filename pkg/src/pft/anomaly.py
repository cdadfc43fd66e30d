"""Low-frequency reconstruction anomaly scoring.

The series is fitted by its Fourier coefficients on ``[-M, M]`` and each
point is scored by its absolute deviation from that fitted curve. The
coefficients come either from the partial transform or from a full FFT
whose unused bins are discarded; the rest of the pipeline is shared.
"""

from dataclasses import dataclass

import numpy as np

from . import fft as _fft
from ._validation import check_half_width, check_int, check_signal
from .errors import PftError
from .planner import DEFAULT_EPSILON, build_plan
from .transform import execute

SOURCES = ("pft", "fft")


@dataclass(frozen=True, eq=False)
class AnomalyReport:
    indices: np.ndarray
    scores: np.ndarray
    k: int
    fitted_curve_source: str

    def as_dict(self):
        return {
            "k": self.k,
            "fitted_curve_source": self.fitted_curve_source,
            "indices": [int(i) for i in self.indices],
            "scores": [float(s) for s in self.scores],
        }


def low_frequency_coefficients(x, M, source="pft", epsilon=DEFAULT_EPSILON, table=None, plan=None):
    """Coefficients for m = -M..M, by partial transform or full FFT."""
    if source not in SOURCES:
        raise PftError(f"source must be one of {SOURCES}, got {source!r}")
    N = x.size
    if source == "fft":
        return _fft.fft(x)[np.arange(-M, M + 1) % N]
    if plan is None:
        plan = build_plan(N, M, 0, None, epsilon, table)
    return execute(plan, x, check_finite=False).values


def fitted_curve(coeffs, N, real=True):
    """Inverse DFT restricted to m = -M..M, evaluated directly at every n.

    For real series only m >= 0 is used, the negative half being the
    conjugate mirror.
    """
    M = (coeffs.size - 1) // 2
    n = np.arange(N, dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    if real:
        m = np.arange(1, M + 1, dtype=np.int64)
        pos = coeffs[M + 1:]
        tail = (roots[(m[:, None] * n[None, :]) % N] * pos[:, None]).sum(axis=0)
        return (coeffs[M].real + 2.0 * tail.real) / N
    m = np.arange(-M, M + 1, dtype=np.int64)
    return (roots[(m[:, None] * n[None, :]) % N] * coeffs[:, None]).sum(axis=0) / N


def top_k(scores, k):
    """Indices of the ``k`` largest scores; ties broken by ascending index."""
    order = np.lexsort((np.arange(scores.size), -scores))
    return order[:k]


def residual_scores(x, M, source="pft", epsilon=DEFAULT_EPSILON, table=None, plan=None):
    x = check_signal(x, allow_real=True)
    M = check_half_width(x.size, M)
    coeffs = low_frequency_coefficients(x, M, source, epsilon, table, plan)
    curve = fitted_curve(coeffs, x.size, real=not np.iscomplexobj(x))
    return np.abs(x - curve), curve


def detect_anomalies(x, M, k, source="pft", epsilon=DEFAULT_EPSILON, table=None, plan=None):
    """Top-``k`` points by deviation from the low-frequency fitted curve."""
    k = check_int(k, "k", minimum=1)
    scores, _ = residual_scores(x, M, source, epsilon, table, plan)
    k = min(k, scores.size)
    idx = top_k(scores, k)
    return AnomalyReport(indices=idx, scores=scores[idx], k=k, fitted_curve_source=source)


def synthetic_series(N, n_spikes=20, seed=0, M_signal=40):
    """Smooth random low-frequency series with noise and ``n_spikes`` injected spikes.

    Returns ``(series, spike_positions)``.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(N) / N
    series = np.zeros(N)
    for freq in rng.choice(np.arange(1, M_signal + 1), size=6, replace=False):
        series += rng.uniform(0.5, 2.0) * np.sin(2 * np.pi * freq * t + rng.uniform(0, 2 * np.pi))
    series += 20.0 + rng.normal(0.0, 0.05, N)
    spikes = np.sort(rng.choice(N, size=n_spikes, replace=False))
    series[spikes] += rng.choice([-1.0, 1.0], n_spikes) * rng.uniform(2.0, 6.0, n_spikes)
    return series, spikes
