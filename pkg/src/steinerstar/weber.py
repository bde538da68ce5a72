"""Weber center (geometric median) and minimum Steiner star length.

The solver is a damped Weiszfeld iteration with the Vardi-Zhang displacement
rule for iterates that land on an input point, so coincident and anchored
cases are handled without divergence. Convergence is certified by the
first-order optimality residual (the norm of the summed unit vectors from the
center to the points), or by the vertex condition when the optimum is an
input point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import CenterCoincidesWithPointError
from .geometry import check_point, check_points, diameter

__all__ = [
    "WeberResult",
    "optimality_residual",
    "steiner_star_length",
    "weiszfeld",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000

# Iterates closer than this fraction of the diameter to an input point are
# snapped onto it and tested for vertex optimality.
_SNAP_FRACTION = 1e-13


def steiner_star_length(X, x) -> float:
    """Total length of the star connecting ``x`` to every point of ``X``."""
    X = check_points(X)
    x = check_point(x, dim=X.shape[1])
    return float(np.linalg.norm(X - x, axis=1).sum())


def optimality_residual(X, x) -> float:
    """Norm of sum_i (x - p_i)/|x - p_i|; zero exactly at an interior Weber
    center.

    Raises
    ------
    CenterCoincidesWithPointError
        If ``x`` coincides with an input point (the unit vector is undefined).
    """
    X = check_points(X)
    x = check_point(x, dim=X.shape[1])
    diff = x - X
    dist = np.linalg.norm(diff, axis=1)
    if np.any(dist == 0.0):
        k = int(np.flatnonzero(dist == 0.0)[0])
        raise CenterCoincidesWithPointError(f"x coincides with input point {k}")
    return float(np.linalg.norm((diff / dist[:, None]).sum(axis=0)))


@dataclass(frozen=True)
class WeberResult:
    """Outcome of a Weber center solve.

    ``residual`` is the optimality residual at ``center`` for an interior
    optimum; when ``anchored_index`` is set it is the vertex-condition norm
    ``|sum_{i != k} (p_k - p_i)/|p_k - p_i||`` instead (optimal iff <= the
    multiplicity of the anchor point). ``history`` holds the objective value
    after every accepted iterate, starting from the initial point.
    """

    center: np.ndarray
    steiner_length: float
    residual: float
    iterations: int
    converged: bool
    anchored_index: int | None
    history: tuple[float, ...]


def _extrapolated_candidate(x_prev, x, x_new):
    """Geometric extrapolation of the iterate sequence. Near-vertex optima
    make the update map contract at a rate arbitrarily close to 1; once the
    slow mode dominates, the steps form a geometric sequence whose limit can
    be jumped to directly. Returns None when the last two steps do not look
    like a contraction."""
    step_prev = x - x_prev
    step_new = x_new - x
    norm_prev = float(np.linalg.norm(step_prev))
    norm_new = float(np.linalg.norm(step_new))
    if norm_prev == 0.0 or norm_new == 0.0:
        return None
    gamma = norm_new / norm_prev
    if gamma >= 0.9999:
        return None
    return x_new + step_new * (gamma / (1.0 - gamma))


def _anchored_result(X, k: int, residual: float, iterations: int,
                     history: list[float]) -> WeberResult:
    center = X[k].copy()
    length = float(np.linalg.norm(X - center, axis=1).sum())
    history.append(length)
    return WeberResult(
        center=center,
        steiner_length=length,
        residual=residual,
        iterations=iterations,
        converged=True,
        anchored_index=k,
        history=tuple(history),
    )


def weiszfeld(X, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
              x0=None) -> WeberResult:
    """Approximate the Weber center of ``X`` and the Steiner star length there.

    Parameters
    ----------
    X : array-like of shape (n, d)
        Input configuration.
    tol : float
        Per-point residual tolerance: the solve is converged when the
        optimality residual is <= ``tol * n``, or when the iterate is an
        input point whose vertex-condition norm is <= multiplicity + ``tol``.
    max_iter : int
        Iteration budget; when exhausted the best iterate is returned with
        ``converged=False``.
    x0 : array-like, optional
        Starting point; defaults to the coordinate-wise centroid.

    Notes
    -----
    The objective sequence is non-increasing. The minimizer of the summed
    distances cannot in general be computed exactly, so the contract is
    epsilon-approximation only.
    """
    X = check_points(X)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    n, d = X.shape

    if n == 1:
        return WeberResult(X[0].copy(), 0.0, 0.0, 0, True, 0, (0.0,))
    diam = diameter(X)
    if diam == 0.0:
        # all points identical
        return WeberResult(X[0].copy(), 0.0, 0.0, 0, True, 0, (0.0,))
    if n == 2:
        # any point of the segment is optimal; the midpoint is the
        # deterministic choice
        center = 0.5 * (X[0] + X[1])
        length = float(np.linalg.norm(X - center, axis=1).sum())
        return WeberResult(center, length, 0.0, 0, True, None, (length,))

    snap = _SNAP_FRACTION * diam
    x = X.mean(axis=0) if x0 is None else check_point(x0, dim=d).copy()
    fx = float(np.linalg.norm(X - x, axis=1).sum())
    history = [fx]
    residual = np.inf
    x_prev = None

    for it in range(1, max_iter + 1):
        diff = X - x
        dist = np.linalg.norm(diff, axis=1)
        k = int(np.argmin(dist))

        # exact vertex certificate at the nearest input point: if the pull of
        # the other points does not exceed the anchor's multiplicity, that
        # point is a global minimizer (no need to creep onto it iteratively)
        to_others = X - X[k]
        dist_k = np.linalg.norm(to_others, axis=1)
        mult = int((dist_k == 0.0).sum())
        away = dist_k > 0.0
        vertex = (to_others[away] / dist_k[away, None]).sum(axis=0)
        vertex_norm = float(np.linalg.norm(vertex))
        if vertex_norm <= mult + tol:
            return _anchored_result(X, k, vertex_norm, it, history)

        if dist[k] <= snap:
            # iterate sits on a non-optimal input point: displaced step
            near = dist <= snap
            m = int(near.sum())
            far = ~near
            pull = (diff[far] / dist[far, None]).sum(axis=0)
            pull_norm = float(np.linalg.norm(pull))
            residual = pull_norm
            w = 1.0 / dist[far]
            t = (X[far] * w[:, None]).sum(axis=0) / w.sum()
            x_new = x + max(0.0, 1.0 - m / pull_norm) * (t - x)
        else:
            pull = (diff / dist[:, None]).sum(axis=0)
            residual = float(np.linalg.norm(pull))
            if residual <= tol * n:
                return WeberResult(x, fx, residual, it, True, None, tuple(history))
            w = 1.0 / dist
            x_new = (X * w[:, None]).sum(axis=0) / w.sum()
            if x_prev is not None:
                candidate = _extrapolated_candidate(x_prev, x, x_new)
                if candidate is not None and np.all(np.isfinite(candidate)):
                    f_candidate = float(np.linalg.norm(X - candidate, axis=1).sum())
                    f_plain = float(np.linalg.norm(X - x_new, axis=1).sum())
                    if f_candidate < f_plain:
                        x_new = candidate

        if np.array_equal(x_new, x):
            # fixed point at float resolution: no further progress possible
            return WeberResult(x, fx, residual, it, residual <= tol * n, None,
                               tuple(history))
        # the update rules descend in exact arithmetic and the extrapolated
        # candidate is only taken when it descends further; computed
        # objectives may still wiggle by an ulp near convergence
        f_new = float(np.linalg.norm(X - x_new, axis=1).sum())
        x_prev, x, fx = x, x_new, f_new
        history.append(fx)

    return WeberResult(x, fx, residual, max_iter, False, None, tuple(history))
