"""
Unit tests for regret curves, constraint audits and aggregation
"""

import itertools
import unittest
from fractions import Fraction

import numpy as np

from src.conservative import ConservativeConfig
from src.environments import KArmedEnv, make_cmab_grid, make_comb_env
from src.metrics import (
    DEFAULT_ACTION,
    RecordBuilder,
    RunRecord,
    aggregate,
    audit_constraint,
    audit_mv_constraint,
    constraint_slack,
    cumulative_mv_regret,
    default_pull_counts,
    empirical_mean_variance,
    max_mv_slack_deficit,
    max_slack_deficit,
    mv_pseudo_regret,
    pseudo_regret,
)


def _record(actions, rewards=None, mu0=0.7):
    """Single-arm record; ``None`` marks a default pull."""
    is_default = [a is None for a in actions]
    if rewards is None:
        rewards = [mu0 if a is None else 1.0 for a in actions]
    coded = [DEFAULT_ACTION if a is None else a for a in actions]
    return RunRecord(actions=coded, rewards=rewards, is_default=is_default)


def _brute_force_mv_regret(env, rho, actions):
    """Mean-variance pseudo-regret written directly from its definition, in exact rationals."""
    horizon = len(actions)
    rho = Fraction(rho)
    arms = list(range(env.num_arms)) + [None]
    mean = {a: Fraction(float(env.means[a])) for a in range(env.num_arms)}
    mean[None] = Fraction(float(env.default_mean))
    mv = {a: rho * mean[a] - mean[a] * (1 - mean[a]) for a in range(env.num_arms)}
    mv[None] = rho * mean[None]
    best = max(mv[a] for a in range(env.num_arms))
    counts = {a: sum(1 for played in actions if played == a) for a in arms}

    gap_term = sum(counts[x] * (best - mv[x]) for x in arms) / horizon
    risk_term = Fraction(0)
    for x in arms:
        for y in arms:
            if y != x:
                risk_term += counts[x] * counts[y] * (mean[x] - mean[y]) ** 2
    return gap_term + 2 * risk_term / horizon ** 2


class TestRecords(unittest.TestCase):
    """Test cases for RunRecord and RecordBuilder"""

    def test_builder(self):
        builder = RecordBuilder(3)
        builder.append(None, 0.7, True)
        builder.append(2, 1.0, False)
        builder.append(0, 0.0, False)
        record = builder.build(setting="cmab", algorithm="gencb")
        np.testing.assert_array_equal(record.actions, [DEFAULT_ACTION, 2, 0])
        self.assertIsNone(record.action_at(0))
        self.assertEqual(record.action_at(1), 2)
        np.testing.assert_array_equal(default_pull_counts(record), [1, 1, 1])

    def test_builder_requires_full_horizon(self):
        builder = RecordBuilder(2)
        builder.append(0, 1.0, False)
        with self.assertRaises(ValueError):
            builder.build()

    def test_super_arm_builder(self):
        builder = RecordBuilder(2, cardinality=2)
        builder.append([0, 3], 2.0, False)
        builder.append(None, 1.2, True)
        record = builder.build()
        self.assertTrue(record.is_combinatorial)
        np.testing.assert_array_equal(record.actions[1], [DEFAULT_ACTION, DEFAULT_ACTION])

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            RunRecord(actions=[0, 1], rewards=[1.0], is_default=[False, False])


class TestPseudoRegret(unittest.TestCase):
    """Test cases for pseudo_regret"""

    def setUp(self):
        self.env = make_cmab_grid(4, 0.7, 0.8, 0.2, seed=0)

    def test_optimal_arm_has_zero_regret(self):
        curve = pseudo_regret(_record([0] * 10), self.env)
        np.testing.assert_array_equal(curve.values, np.zeros(10))

    def test_default_only(self):
        curve = pseudo_regret(_record([None] * 10), self.env)
        self.assertAlmostEqual(curve.final, 1.0, places=12)

    def test_mixed_trace_matches_resummation(self):
        actions = [None, 3, 1, None, 2]
        curve = pseudo_regret(_record(actions), self.env)
        expected = 0.0
        for step, a in enumerate(actions):
            value = self.env.default_mean if a is None else self.env.means[a]
            expected += 0.8 - value
            self.assertAlmostEqual(curve.values[step], expected, places=12)

    def test_additive_over_concatenation(self):
        first, second = [1, None, 3], [2, 2, None, 0]
        whole = pseudo_regret(_record(first + second), self.env).final
        parts = pseudo_regret(_record(first), self.env).final + pseudo_regret(_record(second), self.env).final
        self.assertAlmostEqual(whole, parts, places=12)

    def test_action_outside_arm_set(self):
        with self.assertRaises(ValueError):
            pseudo_regret(_record([0, 4]), self.env)

    def test_super_arm_regret(self):
        env = make_comb_env(3, 6, 2, seed=0)
        best = np.argsort(-env.means, kind="stable")[:2]
        record = RunRecord(actions=[sorted(best), [DEFAULT_ACTION] * 2], rewards=[1.0, env.default_mean],
                           is_default=[False, True])
        curve = pseudo_regret(record, env)
        self.assertAlmostEqual(curve.values[0], 0.0, places=12)
        self.assertAlmostEqual(curve.values[1], env.optimal_value - env.default_mean, places=12)


class TestMeanVarianceRegret(unittest.TestCase):
    """Test cases for mv_pseudo_regret"""

    def setUp(self):
        self.env = KArmedEnv(means=[0.8, 0.5, 0.3], default_mean=0.4, seed=0)
        self.rho = 2.0

    def test_single_arm_has_no_risk_term(self):
        values = mv_pseudo_regret(_record([1] * 6), self.env, self.rho)
        mv = self.rho * self.env.means - self.env.means * (1 - self.env.means)
        np.testing.assert_allclose(values, np.full(6, mv.max() - mv[1]), rtol=1e-12)

    def test_two_arms_once_each(self):
        values = mv_pseudo_regret(_record([0, 2]), self.env, self.rho)
        mv = self.rho * self.env.means - self.env.means * (1 - self.env.means)
        expected = (mv[0] - mv[2]) / 2 + (2 / 4) * 2 * (0.8 - 0.3) ** 2
        self.assertAlmostEqual(values[1], expected, places=12)

    def test_identical_means_have_no_risk_term(self):
        env = KArmedEnv(means=[0.6, 0.6, 0.6], default_mean=0.5, seed=0)
        values = mv_pseudo_regret(_record([0, 1, 2, 1, 0]), env, self.rho)
        np.testing.assert_allclose(values, np.zeros(5), atol=1e-12)

    def test_matches_brute_force_on_all_short_traces(self):
        options = [0, 1, 2, None]
        for horizon in range(1, 7):
            for actions in itertools.product(options, repeat=horizon):
                values = mv_pseudo_regret(_record(list(actions)), self.env, self.rho)
                expected = _brute_force_mv_regret(self.env, self.rho, actions)
                # Relative error of the float path against the exact value.
                error = abs(Fraction(float(values[-1])) - expected)
                self.assertLessEqual(error, Fraction(1, 10**12) * max(abs(expected), Fraction(1, 100)),
                                     f"{actions}: {values[-1]} != {float(expected)}")

    def test_cumulative_form(self):
        record = _record([0, None, 2, 1])
        normalized = mv_pseudo_regret(record, self.env, self.rho)
        cumulative = cumulative_mv_regret(record, self.env, self.rho)
        np.testing.assert_allclose(cumulative.values, normalized * np.arange(1, 5))

    def test_rejects_super_arms(self):
        env = make_comb_env(3, 6, 2, seed=0)
        record = RunRecord(actions=[[0, 1]], rewards=[1.0], is_default=[False])
        with self.assertRaises(ValueError):
            mv_pseudo_regret(record, env, self.rho)


class TestAudits(unittest.TestCase):
    """Test cases for the constraint auditors"""

    def setUp(self):
        self.cfg = ConservativeConfig(alpha=0.05, mu0=0.7)

    def test_all_default_trace_passes(self):
        record = _record([None] * 1000)
        self.assertIsNone(audit_constraint(record, self.cfg))
        self.assertEqual(max_slack_deficit(record, self.cfg), 0.0)

    def test_zero_reward_first_pull_violates_at_step_one(self):
        record = _record([0, None, None], rewards=[0.0, 0.7, 0.7])
        self.assertEqual(audit_constraint(record, self.cfg), 1)
        self.assertAlmostEqual(max_slack_deficit(record, self.cfg), 0.665)

    def test_slack_values(self):
        record = _record([None, 0], rewards=[0.7, 1.0])
        np.testing.assert_allclose(constraint_slack(record, self.cfg), [0.035, 1.7 - 1.33])

    def test_auditor_is_pure(self):
        record = _record([0, 1, None, 2], rewards=[1.0, 0.0, 0.7, 0.0])
        self.assertEqual(audit_constraint(record, self.cfg), audit_constraint(record, self.cfg))

    def test_default_only_mean_variance(self):
        record = _record([None] * 50)
        np.testing.assert_allclose(empirical_mean_variance(record, 60.0), np.full(50, 42.0))
        self.assertIsNone(audit_mv_constraint(record, self.cfg, 60.0))

    def test_alternating_rewards_violate_mean_variance(self):
        record = _record([0, 1, 0, 1], rewards=[0.0, 1.0, 0.0, 1.0])
        values = empirical_mean_variance(record, 60.0)
        self.assertAlmostEqual(values[1], 29.75)
        first = audit_mv_constraint(record, self.cfg, 60.0)
        self.assertIsNotNone(first)
        self.assertLessEqual(first, 2)
        self.assertGreater(max_mv_slack_deficit(record, self.cfg, 60.0), 0.0)


class TestAggregate(unittest.TestCase):
    """Test cases for aggregate"""

    def test_single_run(self):
        curve = np.array([1.0, 2.0, 3.0])
        envelope = aggregate([curve])
        np.testing.assert_array_equal(envelope.mean, curve)
        np.testing.assert_array_equal(envelope.max, curve)
        np.testing.assert_array_equal(envelope.min, curve)

    def test_two_runs(self):
        c = np.array([1.0, 2.0, 4.0])
        envelope = aggregate([c, 2 * c])
        np.testing.assert_allclose(envelope.mean, 1.5 * c)
        np.testing.assert_array_equal(envelope.max, 2 * c)
        np.testing.assert_array_equal(envelope.min, c)

    def test_mean_within_envelope(self):
        rng = np.random.default_rng(0)
        curves = [np.cumsum(rng.random(100)) for _ in range(50)]
        envelope = aggregate(curves)
        self.assertTrue(np.all(envelope.min <= envelope.mean + 1e-12))
        self.assertTrue(np.all(envelope.mean <= envelope.max + 1e-12))

    def test_invalid_inputs(self):
        with self.assertRaises(ValueError):
            aggregate([])
        with self.assertRaises(ValueError):
            aggregate([np.zeros(3), np.zeros(4)])


if __name__ == '__main__':
    unittest.main()
