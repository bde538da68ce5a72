"""Star lengths, the minimum star, and per-instance ratio bound reports.

A star centered at input point p_i connects p_i to the other n-1 points;
S_i is its total length. The ratio of the minimum star to the minimum
Steiner star is bounded per instance by two closed-form expressions in the
normalized excess delta: the nearest-point bound (sqrt(2)+delta)/(1+delta)
and the averaged bound (c+2 delta)/(1+delta), where c is the sphere mean
distance of the ambient dimension.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .analytic import (
    SQRT2,
    conjectured_plane_ratio,
    ratio_upper_bound,
    sphere_mean_distance,
)
from .exceptions import CenterCoincidesWithPointError, ConjectureCounterexampleWarning, NotConvergedError
from .geometry import WeberFrame, check_points, project_to_unit_sphere, to_weber_frame
from .weber import DEFAULT_MAX_ITER, DEFAULT_TOL, weiszfeld

__all__ = [
    "RatioReport",
    "StarSummary",
    "averaged_bound",
    "min_star",
    "nearest_point_bound",
    "projection_chords",
    "ratio_report",
    "star_length",
    "star_lengths",
]

# additive slack absorbing the solver's O(tol) center error in bound checks
BOUND_SLACK = 1e-7


def star_lengths(X) -> np.ndarray:
    """All star lengths S_i = sum_j |p_i - p_j| as an (n,) array."""
    X = check_points(X)
    if X.shape[0] < 2:
        return np.zeros(1)
    return squareform(pdist(X)).sum(axis=1)


def star_length(X, i: int) -> float:
    """Length of the star centered at input point ``i``."""
    X = check_points(X)
    n = X.shape[0]
    if not 0 <= i < n:
        raise IndexError(f"star index {i} out of range for {n} points")
    return float(np.linalg.norm(X - X[i], axis=1).sum())


@dataclass(frozen=True)
class StarSummary:
    """Star lengths with the minimum highlighted (smallest index on ties).

    ``delta`` stays None here; it is only meaningful relative to a Weber
    center and is filled by ``ratio_report``.
    """

    lengths: np.ndarray
    min_index: int
    min_length: float
    delta: float | None = None


def min_star(X) -> StarSummary:
    """Compute every star length and select the minimum star."""
    lengths = star_lengths(X)
    idx = int(np.argmin(lengths))
    return StarSummary(lengths=lengths, min_index=idx, min_length=float(lengths[idx]))


def nearest_point_bound(delta: float) -> float:
    """Ratio bound (sqrt(2) + delta)/(1 + delta) from re-centering the Steiner
    star at the input point nearest to its center; decreasing in delta, equal
    to sqrt(2) at 0 and tending to 1 at infinity."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if math.isinf(delta):
        return 1.0
    return (SQRT2 + delta) / (1.0 + delta)


def averaged_bound(delta: float, d: int, mean_distance: float | None = None) -> float:
    """Ratio bound (c + 2 delta)/(1 + delta) from averaging all n stars,
    where c is the sphere mean distance: 4/pi for d=2 and 4/3 for d=3.
    Other dimensions require ``mean_distance`` explicitly."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if mean_distance is None:
        if d == 2:
            mean_distance = 4.0 / math.pi
        elif d == 3:
            mean_distance = 4.0 / 3.0
        else:
            raise ValueError(
                f"no built-in mean distance for d={d}; pass mean_distance"
            )
    if math.isinf(delta):
        return 2.0
    return (mean_distance + 2.0 * delta) / (1.0 + delta)


def _rotate_nearest_to_axis(q: np.ndarray, nearest: int) -> np.ndarray:
    """Householder reflection taking the nearest projected point to
    (1, 0, ..., 0); distances are preserved."""
    d = q.shape[1]
    e1 = np.zeros(d)
    e1[0] = 1.0
    v = q[nearest] - e1
    vnorm2 = float(v @ v)
    if vnorm2 < 1e-30:
        return q.copy()
    return q - np.outer(2.0 * (q @ v) / vnorm2, v)


def projection_chords(f: WeberFrame) -> np.ndarray:
    """Distances b_i from the nearest frame point to every point projected on
    the unit sphere, computed in coordinates where the nearest point is
    rotated onto the first axis. The entry at ``nearest_index`` is 0."""
    q = project_to_unit_sphere(f)
    q = _rotate_nearest_to_axis(q, f.nearest_index)
    e1 = np.zeros(q.shape[1])
    e1[0] = 1.0
    return np.linalg.norm(q - e1, axis=1)


@dataclass(frozen=True)
class RatioReport:
    """Measured star/Steiner ratio for one configuration together with every
    applicable closed-form bound at the instance's delta.

    ``delta`` is +inf (and the ratio exactly 1) when the Weber center
    coincides with an input point; the delta-dependent bounds then take
    their limit values. ``conjectured`` is the conjectured plane ratio for
    this n (d = 2 only, None otherwise); exceeding it sets
    ``conjecture_counterexample`` and emits a warning, since the conjecture
    is not a proven bound.
    """

    n: int
    d: int
    steiner_length: float
    min_star: float
    min_star_index: int
    ratio: float
    delta: float
    bound_nearest: float
    bound_averaged: float
    bound_balanced: float
    conjectured: float | None
    conjecture_counterexample: bool

    def to_dict(self) -> dict:
        def clean(x):
            if x is None or not math.isfinite(x):
                return None
            return x

        return {
            "n": self.n,
            "d": self.d,
            "steiner_length": self.steiner_length,
            "min_star": self.min_star,
            "min_star_index": self.min_star_index,
            "ratio": self.ratio,
            "delta": clean(self.delta),
            "bound_nearest": self.bound_nearest,
            "bound_averaged": self.bound_averaged,
            "bound_balanced": self.bound_balanced,
            "conjectured": clean(self.conjectured),
            "conjecture_counterexample": self.conjecture_counterexample,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def ratio_report(X, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER) -> RatioReport:
    """Solve for the Weber center, measure min S / SS*, and evaluate all
    applicable bounds.

    Raises
    ------
    NotConvergedError
        If the Weber solve exhausts its iteration budget.
    """
    X = check_points(X, min_points=2)
    n, d = X.shape
    result = weiszfeld(X, tol=tol, max_iter=max_iter)
    if not result.converged:
        raise NotConvergedError(
            f"Weber solve did not converge in {max_iter} iterations "
            f"(residual {result.residual:.3e})"
        )
    summary = min_star(X)

    frame = None
    if result.anchored_index is None:
        try:
            frame = to_weber_frame(X, result.center)
        except CenterCoincidesWithPointError:
            frame = None

    if frame is None:
        # Weber center is an input point: the minimum star is the Steiner
        # star and the normalized frame degenerates
        ratio = 1.0
        delta = math.inf
    else:
        ratio = summary.min_length / result.steiner_length
        delta = frame.delta

    mean_distance = sphere_mean_distance(d).value if d >= 2 else 1.0
    conjectured = conjectured_plane_ratio(n) if d == 2 else None
    counterexample = bool(
        conjectured is not None and ratio > conjectured + BOUND_SLACK
    )
    if counterexample:
        warnings.warn(
            f"measured ratio {ratio!r} exceeds the conjectured plane ratio "
            f"{conjectured!r} for n={n}; possible counterexample",
            ConjectureCounterexampleWarning,
            stacklevel=2,
        )

    return RatioReport(
        n=n,
        d=d,
        steiner_length=result.steiner_length,
        min_star=summary.min_length,
        min_star_index=summary.min_index,
        ratio=ratio,
        delta=delta,
        bound_nearest=nearest_point_bound(delta),
        bound_averaged=averaged_bound(delta, d, mean_distance=mean_distance),
        bound_balanced=ratio_upper_bound(mean_distance),
        conjectured=conjectured,
        conjecture_counterexample=counterexample,
    )
