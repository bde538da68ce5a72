"""Point-set primitives: validation, distances, and the normalized Weber frame.

A configuration is any (n, d) array-like of finite coordinates; duplicate
points are allowed (multiset semantics). All functions are pure.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .exceptions import CenterCoincidesWithPointError, DimensionMismatchError

__all__ = [
    "FRAME_TOLERANCE",
    "WeberFrame",
    "check_point",
    "check_points",
    "diameter",
    "distance",
    "load_points_csv",
    "pairwise_distance_sum",
    "project_to_unit_sphere",
    "save_points_csv",
    "to_weber_frame",
]

# A center closer than this fraction of the configuration diameter to an
# input point makes the normalized frame degenerate (the ratio is 1 there).
FRAME_TOLERANCE = 1e-9


def check_point(p, dim: int | None = None) -> np.ndarray:
    """Validate a single point and return it as a 1-D float64 array."""
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"expected a 1-D point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(
            f"point has dimension {arr.shape[0]}, expected {dim}"
        )
    return arr


def check_points(X, min_points: int = 1, dim: int | None = None) -> np.ndarray:
    """Validate a configuration and return it as an (n, d) float64 array.

    Parameters
    ----------
    X : array-like of shape (n, d)
        The point configuration.
    min_points : int
        Minimum number of points required.
    dim : int, optional
        Required dimension; inferred from the data when omitted.

    Returns
    -------
    numpy.ndarray
        Float64 array of shape (n, d).
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array of shape (n, d), got shape {arr.shape}")
    n, d = arr.shape
    if n < min_points:
        raise ValueError(f"need at least {min_points} point(s), got {n}")
    if d < 1:
        raise ValueError("points must have dimension >= 1")
    if dim is not None and d != dim:
        raise DimensionMismatchError(f"points have dimension {d}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def distance(p, q) -> float:
    """Euclidean distance between two points of equal dimension."""
    p = check_point(p)
    q = check_point(q, dim=p.shape[0])
    return float(np.linalg.norm(p - q))


def pairwise_distance_sum(X) -> float:
    """Sum of Euclidean distances over all unordered point pairs."""
    X = check_points(X)
    if X.shape[0] < 2:
        return 0.0
    return float(pdist(X).sum())


def diameter(X) -> float:
    """Largest pairwise distance of a configuration (0 for a single point)."""
    X = check_points(X)
    if X.shape[0] < 2:
        return 0.0
    return float(pdist(X).max())


@dataclass(frozen=True)
class WeberFrame:
    """A configuration translated and scaled so the frame center is the
    origin and the nearest point sits at distance exactly 1.

    Attributes
    ----------
    points : numpy.ndarray
        Normalized (n, d) configuration; min_i |p_i| = 1.
    delta : float
        Normalized excess (sum of norms)/n - 1, always >= 0.
    nearest_index : int
        Index of the point at unit distance (smallest index on ties).
    """

    points: np.ndarray
    delta: float
    nearest_index: int


def to_weber_frame(X, center) -> WeberFrame:
    """Translate ``center`` to the origin and scale so the nearest point has
    norm 1.

    Raises
    ------
    CenterCoincidesWithPointError
        If the center lies within ``FRAME_TOLERANCE * diameter`` of an input
        point; the normalized frame is undefined there.
    """
    X = check_points(X)
    center = check_point(center, dim=X.shape[1])
    dists = np.linalg.norm(X - center, axis=1)
    nearest = int(np.argmin(dists))
    r_min = float(dists[nearest])
    if r_min <= FRAME_TOLERANCE * diameter(X):
        raise CenterCoincidesWithPointError(
            f"center coincides with input point {nearest} (distance {r_min:.3e})"
        )
    scaled = (X - center) / r_min
    delta = max(0.0, float(dists.sum() / (len(dists) * r_min)) - 1.0)
    return WeberFrame(points=scaled, delta=delta, nearest_index=nearest)


def project_to_unit_sphere(frame: WeberFrame) -> np.ndarray:
    """Radially project every frame point onto the unit sphere."""
    norms = np.linalg.norm(frame.points, axis=1)
    return frame.points / norms[:, None]


def load_points_csv(path) -> np.ndarray:
    """Read a configuration from CSV: one point per line, ``d`` comma-separated
    coordinates, ``#`` comment lines and blank lines ignored. The dimension is
    inferred from the first data row and enforced on the rest.
    """
    rows: list[list[float]] = []
    dim: int | None = None
    with open(os.fspath(path), encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            try:
                coords = [float(tok) for tok in parts]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed coordinate: {exc}") from None
            if dim is None:
                dim = len(coords)
            elif len(coords) != dim:
                raise ValueError(
                    f"{path}:{lineno}: expected {dim} coordinates, got {len(coords)}"
                )
            rows.append(coords)
    if not rows:
        raise ValueError(f"{path}: no points found")
    return check_points(np.array(rows, dtype=float))


def save_points_csv(path, X) -> None:
    """Write a configuration in the CSV format read by ``load_points_csv``."""
    X = check_points(X)
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        for row in X:
            fh.write(",".join(repr(float(c)) for c in row) + "\n")
