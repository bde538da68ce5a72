"""Seeded stochastic search for extremal point configurations.

Two objectives: maximize the star Steiner ratio of a free configuration, or
maximize the pairwise-distance sum of points constrained to the unit sphere.
The optimizer is single-chain hill climbing with per-point Gaussian
perturbation and a geometric step decay, restarted from independent
sub-seeds; identical specs give bit-identical results.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .analytic import circle_sum_max, conjectured_plane_ratio, ratio_upper_bound, sphere_mean_distance
from .exceptions import NotConvergedError
from .stars import star_lengths
from .weber import weiszfeld

__all__ = ["OBJECTIVES", "SearchResult", "SearchSpec", "maximize", "uniform_circle", "uniform_sphere"]

OBJECTIVES = ("steiner_ratio", "sphere_sum")

# slack before a measured value above a reference is reported as a
# counterexample (absorbs solver and summation noise)
COUNTEREXAMPLE_SLACK = 1e-6


@dataclass(frozen=True)
class SearchSpec:
    """Search definition. The RNG is numpy's PCG64 seeded from ``seed``;
    restarts draw from ``SeedSequence(seed).spawn(restarts)`` in order, so
    results do not depend on execution order."""

    n: int
    d: int
    seed: int
    iterations: int
    objective: str
    initial_step: float = 0.3
    decay: float = 0.999
    restarts: int = 8
    solver_tol: float = 1e-9

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.d < 2:
            raise ValueError("need d >= 2")
        if self.iterations < 1:
            raise ValueError("need iterations >= 1")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError("decay must lie in (0, 1]")
        if self.initial_step <= 0.0:
            raise ValueError("initial_step must be positive")
        if self.restarts < 1:
            raise ValueError("need restarts >= 1")


@dataclass(frozen=True)
class SearchResult:
    """Best configuration found, its objective value, and the improvement
    history (iteration, value) of the winning restart chain."""

    best_config: np.ndarray
    best_value: float
    reference_value: float | None
    history: tuple[tuple[int, float], ...]
    failed_evaluations: int
    restart_index: int
    counterexample: bool = False
    counterexample_note: str = ""

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "reference_value": self.reference_value,
            "restart_index": self.restart_index,
            "failed_evaluations": self.failed_evaluations,
            "counterexample": self.counterexample,
            "counterexample_note": self.counterexample_note,
            "history": [[it, val] for it, val in self.history],
            "best_config": [list(map(float, row)) for row in self.best_config],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def uniform_circle(n: int) -> np.ndarray:
    """n points at angles 2*pi*i/n on the unit circle."""
    if n < 2:
        raise ValueError("need n >= 2")
    angles = 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


def uniform_sphere(n: int, d: int, seed: int) -> np.ndarray:
    """n seeded uniform points on the unit sphere in R^d (normalized
    Gaussian vectors); deterministic for a fixed seed."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((n, d))
    norms = np.linalg.norm(points, axis=1)
    while np.any(norms == 0.0):  # pragma: no cover - probability zero
        redraws = norms == 0.0
        points[redraws] = rng.standard_normal((int(redraws.sum()), d))
        norms = np.linalg.norm(points, axis=1)
    return points / norms[:, None]


def _normalize_rows(X: np.ndarray) -> np.ndarray | None:
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0.0):
        return None
    return X / norms[:, None]


def _scale_to_diameter(X: np.ndarray, target: float = 2.0) -> np.ndarray | None:
    diam = pdist(X).max()
    if diam == 0.0:
        return None
    return X * (target / diam)


def _sphere_sum_value(X: np.ndarray) -> float:
    return float(pdist(X).sum())


def _steiner_ratio_value(X: np.ndarray, tol: float) -> float:
    result = weiszfeld(X, tol=tol)
    if not result.converged:
        raise NotConvergedError("candidate Weber solve did not converge")
    if result.anchored_index is not None:
        # center sits on an input point: the ratio is exactly 1
        return 1.0
    return float(star_lengths(X).min()) / result.steiner_length


def _run_chain(spec: SearchSpec, rng: np.random.Generator):
    n, d = spec.n, spec.d
    sphere = spec.objective == "sphere_sum"
    failed = 0

    X = None
    value = None
    for _ in range(100):
        cand = rng.standard_normal((n, d))
        cand = _normalize_rows(cand) if sphere else _scale_to_diameter(cand)
        if cand is None:
            continue
        try:
            value = _sphere_sum_value(cand) if sphere else _steiner_ratio_value(cand, spec.solver_tol)
        except NotConvergedError:
            failed += 1
            continue
        X = cand
        break
    if X is None:
        raise NotConvergedError("could not evaluate any initial configuration")

    history = [(0, value)]
    step = spec.initial_step
    for it in range(1, spec.iterations + 1):
        noise = rng.standard_normal((n, d))
        cand = X + step * noise
        step *= spec.decay
        cand = _normalize_rows(cand) if sphere else _scale_to_diameter(cand)
        if cand is None:
            failed += 1
            continue
        try:
            cand_value = _sphere_sum_value(cand) if sphere else _steiner_ratio_value(cand, spec.solver_tol)
        except NotConvergedError:
            failed += 1
            continue
        if cand_value > value:
            X, value = cand, cand_value
            history.append((it, value))
    return X, value, history, failed


def _reference_value(spec: SearchSpec) -> float | None:
    if spec.d != 2:
        return None
    if spec.objective == "sphere_sum":
        return circle_sum_max(spec.n)
    return conjectured_plane_ratio(spec.n)


def maximize(spec: SearchSpec) -> SearchResult:
    """Run the hill-climbing search described by ``spec``.

    Restarts run on independent sub-seeds; the best value wins, ties broken
    by the smaller restart index. Proven upper bounds are re-checked on the
    result: exceeding one marks the result as a counterexample report rather
    than raising.
    """
    children = np.random.SeedSequence(spec.seed).spawn(spec.restarts)
    best = None
    best_index = -1
    total_failed = 0
    for k, child in enumerate(children):
        chain = _run_chain(spec, np.random.default_rng(child))
        total_failed += chain[3]
        if best is None or chain[1] > best[1]:
            best = chain
            best_index = k

    X, value, history, _ = best
    reference = _reference_value(spec)

    counterexample = False
    note = ""
    if reference is not None and value > reference + COUNTEREXAMPLE_SLACK:
        counterexample = True
        if spec.objective == "sphere_sum":
            note = (
                f"sphere_sum {value!r} exceeds the closed-form maximum "
                f"{reference!r} for n={spec.n} on the circle"
            )
        else:
            note = (
                f"steiner_ratio {value!r} exceeds the conjectured plane ratio "
                f"{reference!r} for n={spec.n}"
            )
    if spec.objective == "steiner_ratio" and spec.d in (2, 3):
        cap = ratio_upper_bound(sphere_mean_distance(spec.d).value)
        if value > cap + COUNTEREXAMPLE_SLACK:
            counterexample = True
            note = (
                f"steiner_ratio {value!r} exceeds the proven upper bound "
                f"{cap!r} in d={spec.d}; this indicates a solver bug"
            )

    return SearchResult(
        best_config=X,
        best_value=value,
        reference_value=reference,
        history=tuple(history),
        failed_evaluations=total_failed,
        restart_index=best_index,
        counterexample=counterexample,
        counterexample_note=note,
    )
