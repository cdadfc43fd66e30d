"""Fast partial Fourier transform: coefficients on a frequency window only."""

from .anomaly import AnomalyReport, detect_anomalies
from .errors import (
    ConvergenceError,
    MissingEntry,
    PftError,
    RatioOutOfRange,
    TableFormatError,
    VersionMismatch,
)
from .estimators import PartialFourierTransform, PartialFourierTransform2D, SpectralAnomalyDetector
from .minimax import ApproxPoly, ScopeTable, best_approx, build_table, default_table, load_table, save_table, scope_xi
from .oracle import ErrorReport, compare, naive_dft, naive_dft_2d
from .pft2d import Parenthesization, Pft2dPlan, build_plan_2d, execute_2d
from .planner import DEFAULT_EPSILON, PftPlan, build_plan, select_divisor
from .transform import PartialSpectrum, PartialSpectrum2d, TargetRange, execute, execute_many

__all__ = [
    "AnomalyReport", "ApproxPoly", "ConvergenceError", "DEFAULT_EPSILON", "ErrorReport",
    "MissingEntry", "Parenthesization", "PartialFourierTransform", "PartialFourierTransform2D",
    "PartialSpectrum", "PartialSpectrum2d", "Pft2dPlan", "PftError", "PftPlan", "RatioOutOfRange",
    "ScopeTable", "SpectralAnomalyDetector", "TableFormatError", "TargetRange", "VersionMismatch",
    "best_approx", "build_plan", "build_plan_2d", "build_table", "compare", "default_table",
    "detect_anomalies", "execute", "execute_2d", "execute_many", "load_table",
    "naive_dft", "naive_dft_2d", "save_table", "scope_xi", "select_divisor",
]
