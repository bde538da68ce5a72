"""Maximum-weight perfect matching for small even point sets.

Exact answers come from a subset dynamic program over 2^n states, which is
all the desk-scale ratio checks need; a greedy approximation exists behind an
explicit flag for larger inputs and must never feed bound assertions.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.spatial.distance import pdist, squareform

from .exceptions import MatchingTooLargeError, OddCardinalityError
from .geometry import check_points
from .stars import min_star

__all__ = ["EXACT_LIMIT", "MatchingResult", "max_matching", "star_matching_ratio"]

EXACT_LIMIT = 20


@dataclass(frozen=True)
class MatchingResult:
    """A perfect matching as index pairs (i < j, sorted by i) and its total
    Euclidean length. ``exact`` is False for the greedy approximation."""

    pairs: tuple[tuple[int, int], ...]
    total_weight: float
    exact: bool


def _exact_matching(w: list[list[float]], n: int) -> MatchingResult:
    # h[mask] = max weight perfect matching of the points NOT in mask;
    # always pairing the lowest free index keeps the state space tight and
    # makes the smallest-j reconstruction lexicographically minimal.
    full = (1 << n) - 1
    neg = float("-inf")
    h = [neg] * (1 << n)
    h[full] = 0.0
    for mask in range(full - 1, -1, -1):
        free = full ^ mask
        if bin(free).count("1") % 2:
            continue
        i = (free & -free).bit_length() - 1
        rest = free ^ (1 << i)
        wi = w[i]
        base = mask | (1 << i)
        best = neg
        while rest:
            jbit = rest & -rest
            cand = wi[jbit.bit_length() - 1] + h[base | jbit]
            if cand > best:
                best = cand
            rest ^= jbit
        h[mask] = best

    pairs = []
    mask = 0
    while mask != full:
        free = full ^ mask
        i = (free & -free).bit_length() - 1
        rest = free ^ (1 << i)
        base = mask | (1 << i)
        wi = w[i]
        while rest:
            jbit = rest & -rest
            j = jbit.bit_length() - 1
            if wi[j] + h[base | jbit] == h[mask]:
                pairs.append((i, j))
                mask = base | jbit
                break
            rest ^= jbit
        else:  # pragma: no cover - float max always has a witness
            raise AssertionError("matching reconstruction failed")
    total = sum(w[i][j] for i, j in pairs)
    return MatchingResult(pairs=tuple(pairs), total_weight=total, exact=True)


def _greedy_matching(w: list[list[float]], n: int) -> MatchingResult:
    edges = sorted(
        ((w[i][j], i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda e: (-e[0], e[1], e[2]),
    )
    used = [False] * n
    pairs = []
    total = 0.0
    for weight, i, j in edges:
        if not used[i] and not used[j]:
            used[i] = used[j] = True
            pairs.append((i, j))
            total += weight
    pairs.sort()
    return MatchingResult(pairs=tuple(pairs), total_weight=total, exact=False)


def max_matching(X, method: str = "exact") -> MatchingResult:
    """Maximum-weight perfect matching of an even configuration.

    ``method="exact"`` (default) runs the subset DP and refuses n > 20;
    ``method="greedy"`` picks heaviest disjoint pairs and is only an
    approximation.
    """
    X = check_points(X, min_points=2)
    n = X.shape[0]
    if n % 2:
        raise OddCardinalityError(f"perfect matching needs an even n, got {n}")
    if method not in ("exact", "greedy"):
        raise ValueError(f"unknown method {method!r}")
    w = squareform(pdist(X)).tolist()
    if method == "greedy":
        return _greedy_matching(w, n)
    if n > EXACT_LIMIT:
        raise MatchingTooLargeError(
            f"exact matching supports n <= {EXACT_LIMIT}, got {n}; "
            "use method='greedy' for an approximation"
        )
    return _exact_matching(w, n)


def star_matching_ratio(X, method: str = "exact") -> float:
    """Ratio of the minimum star to the maximum-weight perfect matching."""
    X = check_points(X, min_points=2)
    return min_star(X).min_length / max_matching(X, method=method).total_weight
