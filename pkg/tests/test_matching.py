import itertools
import math

import numpy as np
import pytest

from steinerstar.exceptions import MatchingTooLargeError, OddCardinalityError
from steinerstar.matching import max_matching, star_matching_ratio

SQRT2 = math.sqrt(2.0)


def all_perfect_matchings(indices):
    """Recursive enumeration oracle: every way to pair up the indices."""
    if not indices:
        yield ()
        return
    first = indices[0]
    for k in range(1, len(indices)):
        rest = indices[1:k] + indices[k + 1:]
        for sub in all_perfect_matchings(rest):
            yield ((first, indices[k]),) + sub


def brute_force_best(X):
    n = X.shape[0]
    best_weight = -math.inf
    best_pairs = None
    for pairing in all_perfect_matchings(tuple(range(n))):
        weight = sum(math.dist(X[i], X[j]) for i, j in pairing)
        key = tuple(sorted(tuple(sorted(p)) for p in pairing))
        if weight > best_weight or (weight == best_weight and key < best_pairs):
            best_weight = weight
            best_pairs = key
    return best_weight, best_pairs


class TestExactMatching:
    def test_unit_square_diagonals(self):
        X = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
        result = max_matching(X)
        assert result.pairs == ((0, 2), (1, 3))
        assert result.total_weight == pytest.approx(2.0 * SQRT2, rel=1e-12)
        assert result.exact

    def test_two_points(self):
        result = max_matching(np.array([[0, 0], [1, 0]], float))
        assert result.pairs == ((0, 1),)
        assert result.total_weight == 1.0

    def test_against_brute_force(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            n = int(rng.choice([2, 4, 6, 8]))
            d = int(rng.integers(2, 4))
            X = rng.standard_normal((n, d))
            result = max_matching(X)
            weight, pairs = brute_force_best(X)
            assert abs(result.total_weight - weight) <= 1e-12 * max(1.0, weight)
            assert result.pairs == pairs

    def test_tie_breaks_lexicographically(self):
        # equally spaced collinear points: (0,2),(1,3) and (0,3),(1,2) both
        # have weight 4; the lexicographically smaller pair set must win
        X = np.array([[0, 0], [1, 0], [2, 0], [3, 0]], float)
        result = max_matching(X)
        assert result.pairs == ((0, 2), (1, 3))
        assert result.total_weight == pytest.approx(4.0, rel=1e-15)

    def test_total_weight_matches_pairs(self):
        rng = np.random.default_rng(67)
        X = rng.standard_normal((12, 3))
        result = max_matching(X)
        recomputed = sum(math.dist(X[i], X[j]) for i, j in result.pairs)
        assert result.total_weight == pytest.approx(recomputed, abs=1e-12)
        flat = [i for pair in result.pairs for i in pair]
        assert sorted(flat) == list(range(12))

    def test_odd_cardinality_rejected(self):
        with pytest.raises(OddCardinalityError):
            max_matching(np.zeros((3, 2)))

    def test_too_large_rejected(self):
        with pytest.raises(MatchingTooLargeError):
            max_matching(np.random.default_rng(0).standard_normal((22, 2)))


class TestGreedyMatching:
    def test_allowed_beyond_exact_limit(self):
        rng = np.random.default_rng(71)
        X = rng.standard_normal((26, 2))
        result = max_matching(X, method="greedy")
        assert not result.exact
        flat = [i for pair in result.pairs for i in pair]
        assert sorted(flat) == list(range(26))

    def test_never_beats_exact(self):
        rng = np.random.default_rng(73)
        for _ in range(20):
            X = rng.standard_normal((10, 2))
            greedy = max_matching(X, method="greedy")
            exact = max_matching(X)
            assert greedy.total_weight <= exact.total_weight + 1e-12

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            max_matching(np.zeros((2, 2)), method="blossom")


class TestStarMatchingRatio:
    def test_unit_square(self):
        X = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
        assert star_matching_ratio(X) == pytest.approx(
            (2.0 + SQRT2) / (2.0 * SQRT2), rel=1e-12
        )

    def test_antipodal_pair(self):
        assert star_matching_ratio(np.array([[-1, 0], [1, 0]], float)) == 1.0

    def test_invariant_under_similarity(self):
        rng = np.random.default_rng(79)
        X = rng.standard_normal((10, 2))
        base = star_matching_ratio(X)
        theta = 0.7
        rot = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        moved = 3.5 * (X @ rot.T) + np.array([2.0, -1.0])
        assert star_matching_ratio(moved) == pytest.approx(base, rel=1e-9)

    def test_matching_weight_scales(self):
        rng = np.random.default_rng(83)
        X = rng.standard_normal((8, 3))
        w1 = max_matching(X).total_weight
        w2 = max_matching(4.0 * X).total_weight
        assert w2 / w1 == pytest.approx(4.0, rel=1e-9)

    def test_plane_bound_on_random_instances(self):
        from steinerstar.analytic import ratio_upper_bound

        cap = ratio_upper_bound(4.0 / math.pi) * 2.0 / math.sqrt(3.0)
        rng = np.random.default_rng(89)
        for _ in range(60):
            n = int(rng.choice([4, 6, 8, 10]))
            X = rng.standard_normal((n, 2))
            assert star_matching_ratio(X) <= cap + 1e-6
