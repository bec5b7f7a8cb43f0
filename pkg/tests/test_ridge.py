"""
Unit tests for the incremental ridge regression state
"""

import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from src.linalg import (
    RidgeError,
    mahalanobis_inverse_norm,
    mahalanobis_inverse_norms,
    ridge_init,
    ridge_update,
)


def _batch_estimate(dim, lam, features, rewards):
    """Independent dense solve of (λI + Σ x xᵀ) θ = Σ r x."""
    X = np.asarray(features, dtype=np.float64).reshape(-1, dim)
    r = np.asarray(rewards, dtype=np.float64)
    return np.linalg.solve(lam * np.eye(dim) + X.T @ X, X.T @ r)


def _random_features(rng, n, dim):
    x = rng.standard_normal((n, dim))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x * rng.uniform(0.0, 1.0, size=(n, 1))


class TestRidgeInit(unittest.TestCase):
    """Test cases for ridge_init"""

    def test_identity_start(self):
        state = ridge_init(2, 1.0, 1.0, 1.0)
        np.testing.assert_array_equal(state.gram, np.eye(2))
        np.testing.assert_array_equal(state.estimate, np.zeros(2))
        np.testing.assert_array_equal(state.response, np.zeros(2))

    def test_scaled_identity(self):
        state = ridge_init(3, 4.0, 2.0, 1.0)
        np.testing.assert_array_equal(state.gram, 4.0 * np.eye(3))

    def test_lambda_below_floor_rejected(self):
        with self.assertRaises(RidgeError):
            ridge_init(2, 0.5, 1.0, 1.0)
        with self.assertRaises(RidgeError):
            ridge_init(2, 3.0, 2.0, 1.0)

    def test_invalid_dimension_and_bounds(self):
        with self.assertRaises(RidgeError):
            ridge_init(0, 1.0, 1.0, 1.0)
        with self.assertRaises(RidgeError):
            ridge_init(2, 1.0, 1.0, 0.0)


class TestRidgeUpdate(unittest.TestCase):
    """Test cases for ridge_update"""

    def test_single_update(self):
        state = ridge_update(ridge_init(2, 1.0, 1.0, 1.0), [1.0, 0.0], 1.0)
        np.testing.assert_allclose(state.gram, [[2.0, 0.0], [0.0, 1.0]])
        np.testing.assert_allclose(state.response, [1.0, 0.0])
        np.testing.assert_allclose(state.estimate, [0.5, 0.0])

    def test_update_returns_new_state(self):
        initial = ridge_init(2, 1.0, 1.0, 1.0)
        ridge_update(initial, [0.6, 0.8], 1.0)
        np.testing.assert_array_equal(initial.gram, np.eye(2))

    def test_zero_feature_is_a_no_op(self):
        state = ridge_update(ridge_init(2, 1.0, 1.0, 1.0), [0.6, 0.0], 1.0)
        after = ridge_update(state, [0.0, 0.0], 0.3)
        np.testing.assert_array_equal(after.gram, state.gram)
        np.testing.assert_array_equal(after.response, state.response)
        np.testing.assert_array_equal(after.estimate, state.estimate)

    def test_gram_stays_symmetric(self):
        rng = np.random.default_rng(3)
        state = ridge_init(4, 1.0, 1.0, 1.0)
        for x in _random_features(rng, 30, 4):
            state = ridge_update(state, x, float(rng.random()))
        np.testing.assert_array_equal(state.gram, state.gram.T)

    def test_three_updates_match_batch_solve(self):
        rng = np.random.default_rng(11)
        features = _random_features(rng, 3, 3)
        rewards = rng.random(3)
        state = ridge_init(3, 1.0, 1.0, 1.0)
        for x, r in zip(features, rewards):
            state = ridge_update(state, x, r)
        np.testing.assert_allclose(state.estimate, _batch_estimate(3, 1.0, features, rewards), rtol=1e-10)

    def test_random_instances_match_batch_solve(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            dim = int(rng.integers(1, 11))
            n = int(rng.integers(1, 51))
            lam = float(rng.uniform(1.0, 5.0))
            features = _random_features(rng, n, dim)
            rewards = rng.random(n)
            state = ridge_init(dim, lam, 1.0, 1.0)
            for x, r in zip(features, rewards):
                state = ridge_update(state, x, r)
            expected = _batch_estimate(dim, lam, features, rewards)
            np.testing.assert_allclose(state.estimate, expected, rtol=1e-9, atol=1e-12)

    def test_feature_over_bound_rejected(self):
        state = ridge_init(2, 1.0, 1.0, 1.0)
        with self.assertRaises(RidgeError):
            ridge_update(state, [1.0, 1.0], 1.0)

    def test_dimension_mismatch_rejected(self):
        with self.assertRaises(RidgeError):
            ridge_update(ridge_init(2, 1.0, 1.0, 1.0), [1.0, 0.0, 0.0], 1.0)


class TestMahalanobisNorm(unittest.TestCase):
    """Test cases for the V⁻¹-norm queries"""

    def test_identity_reduces_to_euclidean(self):
        state = ridge_init(2, 1.0, 1.0, 1.0)
        self.assertAlmostEqual(mahalanobis_inverse_norm(state, [3.0, 4.0]), 5.0)

    def test_diagonal_gram(self):
        state = ridge_update(ridge_init(2, 1.0, 1.0, 1.0), [1.0, 0.0], 0.0)
        self.assertAlmostEqual(mahalanobis_inverse_norm(state, [1.0, 0.0]), math.sqrt(0.5))

    def test_zero_vector(self):
        self.assertEqual(mahalanobis_inverse_norm(ridge_init(3, 1.0, 1.0, 1.0), [0.0, 0.0, 0.0]), 0.0)

    def test_batch_matches_single(self):
        rng = np.random.default_rng(5)
        state = ridge_init(3, 1.0, 1.0, 1.0)
        for x in _random_features(rng, 10, 3):
            state = ridge_update(state, x, 1.0)
        queries = _random_features(rng, 6, 3)
        batch = mahalanobis_inverse_norms(state, queries)
        for q, value in zip(queries, batch):
            self.assertAlmostEqual(value, mahalanobis_inverse_norm(state, q), places=12)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(min_value=-0.5, max_value=0.5), min_size=3, max_size=3))
    def test_norm_shrinks_with_updates(self, query):
        state = ridge_init(3, 1.0, 1.0, 1.0)
        before = mahalanobis_inverse_norm(state, query)
        state = ridge_update(state, [0.0, 0.6, 0.8], 1.0)
        self.assertLessEqual(mahalanobis_inverse_norm(state, query), before + 1e-12)


if __name__ == '__main__':
    unittest.main()
