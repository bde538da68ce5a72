"""Scikit-learn compatible wrapper around the Weber center solver."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .geometry import check_points
from .weber import DEFAULT_MAX_ITER, DEFAULT_TOL, weiszfeld

__all__ = ["WeberCenter"]


class WeberCenter(BaseEstimator):
    """Estimator computing the Weber center (geometric median) of a point set.

    Follows the scikit-learn conventions: hyperparameters in ``__init__``,
    ``fit(X)`` returning ``self``, fitted attributes with trailing
    underscores, and ``transform`` producing distances to the fitted center
    so the solver composes with pipelines.

    Parameters
    ----------
    tol : float
        Per-point optimality residual tolerance.
    max_iter : int
        Weiszfeld iteration budget.
    """

    def __init__(self, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER):
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        result = weiszfeld(X, tol=self.tol, max_iter=self.max_iter)
        self.result_ = result
        self.center_ = result.center
        self.steiner_length_ = result.steiner_length
        self.residual_ = result.residual
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.anchored_index_ = result.anchored_index
        return self

    def transform(self, X) -> np.ndarray:
        """Distances from each row of ``X`` to the fitted center, shape (n, 1)."""
        if not hasattr(self, "center_"):
            raise NotFittedError("WeberCenter must be fitted before transform")
        X = check_points(X, dim=self.center_.shape[0])
        return np.linalg.norm(X - self.center_, axis=1)[:, None]

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).transform(X)
