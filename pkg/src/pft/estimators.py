"""scikit-learn style wrappers.

Rows of ``X`` are independent signals. ``fit`` only looks at the row length
to build a plan; the plan is then reused by every ``transform`` call.
sklearn's ``check_array`` rejects complex data, so input checks go through
the package's own validators instead.
"""

import numpy as np
from sklearn.base import BaseEstimator, OutlierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_int, check_signal
from .anomaly import SOURCES, residual_scores, top_k
from .errors import PftError
from .pft2d import build_plan_2d, execute_2d
from .planner import DEFAULT_EPSILON, build_plan
from .transform import execute_many


def _as_rows(X):
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    return check_signal(X, ndim=2, name="X", allow_real=True)


class PartialFourierTransform(TransformerMixin, BaseEstimator):
    """Fourier coefficients on ``mu - M .. mu + M`` for each row of ``X``.

    Parameters
    ----------
    M : int
        Half-width of the target range.
    mu : int, default 0
        Centre of the target range.
    p : int or None
        Divisor of the row length; chosen by the cost model when None.
    epsilon : float
        Target approximation error of the twiddle-factor polynomials.
    table : ScopeTable or None
        Scope table; the packaged one when None.

    Attributes
    ----------
    plan_ : PftPlan
    n_features_in_ : int
    frequencies_ : ndarray of int
        Frequency index of each output column.
    """

    def __init__(self, M=16, mu=0, p=None, epsilon=DEFAULT_EPSILON, table=None):
        self.M = M
        self.mu = mu
        self.p = p
        self.epsilon = epsilon
        self.table = table

    def fit(self, X, y=None):
        X = _as_rows(X)
        self.plan_ = build_plan(X.shape[1], self.M, self.mu, self.p, self.epsilon, self.table)
        self.n_features_in_ = X.shape[1]
        self.frequencies_ = self.plan_.indices.copy()
        return self

    def transform(self, X):
        check_is_fitted(self, "plan_")
        X = _as_rows(X)
        if X.shape[1] != self.n_features_in_:
            raise PftError(f"X has {X.shape[1]} features, fitted with {self.n_features_in_}")
        return execute_many(self.plan_, X, check_finite=False)


class PartialFourierTransform2D(BaseEstimator):
    """Coefficients of a single 2-D grid over a rectangle of frequencies."""

    def __init__(self, M1=8, M2=8, mu1=0, mu2=0, p1=None, p2=None,
                 epsilon=DEFAULT_EPSILON, table=None):
        self.M1 = M1
        self.M2 = M2
        self.mu1 = mu1
        self.mu2 = mu2
        self.p1 = p1
        self.p2 = p2
        self.epsilon = epsilon
        self.table = table

    def fit(self, X, y=None):
        X = check_signal(X, ndim=2, name="X", allow_real=True)
        N1, N2 = X.shape
        self.plan_ = build_plan_2d(N1, N2, self.M1, self.M2, self.mu1, self.mu2,
                                   self.p1, self.p2, self.epsilon, self.table)
        self.shape_in_ = X.shape
        return self

    def transform(self, X):
        check_is_fitted(self, "plan_")
        return execute_2d(self.plan_, X).values

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)


class SpectralAnomalyDetector(OutlierMixin, BaseEstimator):
    """Flags the ``n_anomalies`` points farthest from a low-frequency fit.

    Works on one series at a time: ``X`` is 1-D, or 2-D with a single
    column. ``predict`` returns -1 for anomalies and 1 otherwise, and may
    only be called on the series that was fitted.
    """

    def __init__(self, M=125, n_anomalies=20, source="pft", epsilon=DEFAULT_EPSILON, table=None):
        self.M = M
        self.n_anomalies = n_anomalies
        self.source = source
        self.epsilon = epsilon
        self.table = table

    def _series(self, X):
        X = np.asarray(X)
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        return check_signal(X, name="X", allow_real=True)

    def fit(self, X, y=None):
        if self.source not in SOURCES:
            raise PftError(f"source must be one of {SOURCES}, got {self.source!r}")
        k = check_int(self.n_anomalies, "n_anomalies", minimum=1)
        x = self._series(X)
        self.scores_, self.fitted_curve_ = residual_scores(
            x, self.M, self.source, self.epsilon, self.table
        )
        self.anomaly_indices_ = top_k(self.scores_, min(k, x.size))
        self.n_features_in_ = 1
        self._n_samples = x.size
        return self

    def predict(self, X):
        check_is_fitted(self, "scores_")
        x = self._series(X)
        if x.size != self._n_samples:
            raise PftError("predict expects the series passed to fit")
        labels = np.ones(x.size, dtype=np.int64)
        labels[self.anomaly_indices_] = -1
        return labels

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)
