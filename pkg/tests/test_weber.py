import math

import numpy as np
import pytest

from steinerstar.exceptions import CenterCoincidesWithPointError
from steinerstar.geometry import diameter
from steinerstar.weber import optimality_residual, steiner_star_length, weiszfeld

SQRT2 = math.sqrt(2.0)


def regular_ngon(n):
    angles = 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


class TestSteinerStarLength:
    def test_square_centered_at_origin(self):
        X = regular_ngon(4) * 1.0  # side sqrt(2), circumradius 1
        assert steiner_star_length(X, [0.0, 0.0]) == pytest.approx(4.0, rel=1e-12)

    def test_center_on_one_of_two_points(self):
        X = np.array([[0, 0], [3, 4]], float)
        assert steiner_star_length(X, [0.0, 0.0]) == 5.0

    def test_uniform_circle_center(self):
        for n in (3, 7, 12):
            assert steiner_star_length(regular_ngon(n), [0.0, 0.0]) == pytest.approx(
                float(n), rel=1e-12
            )


class TestOptimalityResidual:
    def test_equilateral_centroid(self):
        X = regular_ngon(3)
        assert optimality_residual(X, [0.0, 0.0]) <= 1e-12

    def test_two_point_hand_computation(self):
        # unit vectors from (0,1) to (+-1,0) sum to a vector of norm sqrt(2)
        X = np.array([[-1, 0], [1, 0]], float)
        assert optimality_residual(X, [0.0, 1.0]) == pytest.approx(SQRT2, rel=1e-12)

    def test_uniform_circle_center(self):
        assert optimality_residual(regular_ngon(17), [0.0, 0.0]) <= 1e-12

    def test_coincidence_rejected(self):
        with pytest.raises(CenterCoincidesWithPointError):
            optimality_residual(np.array([[1, 0], [0, 1]], float), [1.0, 0.0])


class TestWeiszfeldFixtures:
    def test_collinear_anchors_at_median(self):
        res = weiszfeld(np.array([[0, 0], [1, 0], [2, 0]], float))
        assert res.converged
        assert res.anchored_index == 1
        assert res.steiner_length == pytest.approx(2.0, abs=1e-8)
        assert np.allclose(res.center, [1.0, 0.0])

    def test_equilateral_triangle(self):
        res = weiszfeld(regular_ngon(3))
        assert res.converged
        assert res.steiner_length == pytest.approx(3.0, abs=1e-8)
        assert np.linalg.norm(res.center) <= 1e-8

    def test_unit_square(self):
        X = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
        res = weiszfeld(X)
        assert res.converged
        assert res.steiner_length == pytest.approx(2.0 * SQRT2, abs=1e-8)
        assert np.allclose(res.center, [0.5, 0.5], atol=1e-8)

    def test_single_point(self):
        res = weiszfeld([[4.0, 5.0]])
        assert res.converged and res.anchored_index == 0
        assert res.steiner_length == 0.0

    def test_two_points_returns_midpoint(self):
        res = weiszfeld(np.array([[0, 0], [2, 0]], float))
        assert np.allclose(res.center, [1.0, 0.0])
        assert res.steiner_length == pytest.approx(2.0, rel=1e-15)
        assert res.residual == 0.0

    def test_all_points_identical(self):
        res = weiszfeld(np.array([[1.0, 2.0]] * 5))
        assert res.converged and res.anchored_index == 0
        assert res.steiner_length == 0.0

    def test_duplicates_handled(self):
        X = np.array([[0, 0], [0, 0], [0, 0], [5, 0], [0, 5]], float)
        res = weiszfeld(X)
        assert res.converged
        # the triple point dominates: it satisfies the vertex condition
        assert res.anchored_index == 0
        assert res.steiner_length == pytest.approx(10.0, abs=1e-8)


class TestWeiszfeldContracts:
    def test_residual_certificate(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            n = int(rng.integers(3, 33))
            d = int(rng.integers(2, 5))
            X = rng.standard_normal((n, d))
            res = weiszfeld(X)
            assert res.converged
            if res.anchored_index is None:
                assert res.residual <= 1e-10 * n
                assert optimality_residual(X, res.center) <= 1e-10 * n * (1 + 1e-6)
            else:
                mult = int(
                    np.sum(np.linalg.norm(X - X[res.anchored_index], axis=1) == 0.0)
                )
                assert res.residual <= mult + 1e-10

    def test_steiner_length_matches_center(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            X = rng.standard_normal((int(rng.integers(2, 20)), 3))
            res = weiszfeld(X)
            recomputed = steiner_star_length(X, res.center)
            assert res.steiner_length == pytest.approx(recomputed, rel=1e-12)

    def test_objective_monotone(self):
        rng = np.random.default_rng(9)
        for _ in range(40):
            n = int(rng.integers(3, 40))
            d = int(rng.integers(2, 6))
            res = weiszfeld(rng.standard_normal((n, d)))
            hist = res.history
            assert all(b <= a * (1.0 + 1e-11) for a, b in zip(hist, hist[1:]))

    def test_restart_consistency(self):
        rng = np.random.default_rng(13)
        for _ in range(15):
            n = int(rng.integers(3, 24))
            X = rng.standard_normal((n, 2))
            from_centroid = weiszfeld(X)
            x0 = rng.uniform(X.min(axis=0), X.max(axis=0))
            from_random = weiszfeld(X, x0=x0)
            assert from_random.steiner_length == pytest.approx(
                from_centroid.steiner_length, rel=1e-7
            )

    def test_optimality_dominance(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            n = int(rng.integers(2, 33))
            d = int(rng.choice([2, 3, 4]))
            X = rng.standard_normal((n, d))
            res = weiszfeld(X)
            sigma = 0.01 * max(diameter(X), 1e-9)
            noise = rng.standard_normal((100, d)) * sigma
            for candidate in res.center + noise:
                assert res.steiner_length <= steiner_star_length(X, candidate) + 1e-12

    def test_not_converged_flag(self):
        rng = np.random.default_rng(21)
        X = rng.standard_normal((40, 2))
        res = weiszfeld(X, tol=1e-14, max_iter=2)
        assert not res.converged
        assert res.iterations == 2

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            weiszfeld([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]], tol=0.0)


class TestEstimator:
    def test_fit_attributes_and_transform(self):
        from steinerstar import WeberCenter

        X = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
        est = WeberCenter().fit(X)
        assert est.converged_
        assert est.steiner_length_ == pytest.approx(2.0 * SQRT2, abs=1e-8)
        dists = est.transform(X)
        assert dists.shape == (4, 1)
        assert dists == pytest.approx(np.full((4, 1), SQRT2 / 2.0), abs=1e-8)

    def test_get_params_and_clone(self):
        from sklearn.base import clone

        from steinerstar import WeberCenter

        est = WeberCenter(tol=1e-8, max_iter=500)
        assert est.get_params() == {"tol": 1e-8, "max_iter": 500}
        cloned = clone(est)
        assert cloned.get_params() == est.get_params()

    def test_transform_before_fit_raises(self):
        from sklearn.exceptions import NotFittedError

        from steinerstar import WeberCenter

        with pytest.raises(NotFittedError):
            WeberCenter().transform(np.zeros((2, 2)))
