"""
Unit tests for experiment config validation and loading
"""

import json
import os
import shutil
import tempfile
import unittest

from src.harness import ExperimentConfig, load_experiment_config
from src.utils import ConfigLoader, ConfigValidationError, validate_experiment_config


def _raw(**overrides):
    raw = {"schema_version": 1, "setting": "cmab", "algorithm": "gencb"}
    raw.update(overrides)
    return raw


class TestValidation(unittest.TestCase):
    """Test cases for validate_experiment_config"""

    def test_minimal_config_is_valid(self):
        result = validate_experiment_config(_raw())
        self.assertTrue(result["valid"], result["errors"])

    def test_schema_version_required(self):
        raw = _raw()
        del raw["schema_version"]
        result = validate_experiment_config(raw)
        self.assertFalse(result["valid"])
        self.assertTrue(any("schema_version" in e for e in result["errors"]))

    def test_algorithm_must_fit_setting(self):
        self.assertFalse(validate_experiment_config(_raw(algorithm="mvcucb"))["valid"])
        self.assertFalse(validate_experiment_config(_raw(setting="clb", algorithm="lcb_gate"))["valid"])
        self.assertTrue(validate_experiment_config(_raw(setting="mvcbp", algorithm="mvucb"))["valid"])

    def test_every_error_is_reported(self):
        result = validate_experiment_config(_raw(alpha=1.5, runs=0, horizon=-3))
        self.assertEqual(len(result["errors"]), 3)

    def test_default_arm_must_be_suboptimal(self):
        result = validate_experiment_config(_raw(mu0=0.85))
        self.assertFalse(result["valid"])
        self.assertIn("mu0", result["errors"][0])

    def test_mean_variance_precondition(self):
        raw = _raw(setting="mvcbp", algorithm="mvcucb", rho=30.0, alpha=0.05, mu0=0.7)
        result = validate_experiment_config(raw)
        self.assertFalse(result["valid"])
        self.assertTrue(any("alpha*rho*mu0" in e for e in result["errors"]))

        raw["unsafe_mv"] = True
        result = validate_experiment_config(raw)
        self.assertTrue(result["valid"])
        self.assertTrue(any("unsafe_mv" in w for w in result["warnings"]))

    def test_precondition_not_needed_without_gate(self):
        raw = _raw(setting="mvcbp", algorithm="mvucb", rho=10.0)
        self.assertTrue(validate_experiment_config(raw)["valid"])

    def test_checkpoints_within_horizon(self):
        self.assertFalse(validate_experiment_config(_raw(horizon=100, checkpoints=[50, 200]))["valid"])

    def test_cardinality_within_base_arms(self):
        raw = _raw(setting="cccb", d=2, cardinality=5)
        self.assertFalse(validate_experiment_config(raw)["valid"])

    def test_unknown_fields_warn(self):
        result = validate_experiment_config(_raw(colour="blue"))
        self.assertTrue(result["valid"])
        self.assertIn("Unknown field ignored: colour", result["warnings"])

    def test_booleans_are_not_integers(self):
        self.assertFalse(validate_experiment_config(_raw(runs=True))["valid"])


class TestExperimentConfig(unittest.TestCase):
    """Test cases for ExperimentConfig"""

    def test_defaults(self):
        cfg = ExperimentConfig.from_dict(_raw())
        self.assertEqual(cfg.K, 24)
        self.assertEqual(cfg.alpha, 0.05)
        self.assertEqual(cfg.horizon, 100_000)
        self.assertEqual(cfg.runs, 50)
        self.assertEqual(cfg.env_seed, cfg.master_seed)
        self.assertEqual(cfg.name, "cmab_gencb")

    def test_linear_defaults_follow_dimension(self):
        cfg = ExperimentConfig.from_dict(_raw(setting="clb", d=5))
        self.assertEqual(cfg.K, 10)
        self.assertEqual(cfg.alpha, 0.01)

    def test_lambda_field(self):
        cfg = ExperimentConfig.from_dict(_raw(setting="clb", **{"lambda": 2.0}))
        self.assertEqual(cfg.lam, 2.0)
        self.assertEqual(cfg.to_dict()["lambda"], 2.0)

    def test_round_trip(self):
        for raw in (_raw(K=6, checkpoints=[10, 5]), _raw(setting="cccb", d=4, cardinality=2),
                    _raw(setting="mvcbp", algorithm="mvcucb", rho=60.0, env_seed=9)):
            cfg = ExperimentConfig.from_dict(raw)
            self.assertEqual(ExperimentConfig.from_dict(cfg.to_dict()), cfg)

    def test_invalid_config_raises_with_all_errors(self):
        with self.assertRaises(ConfigValidationError) as ctx:
            ExperimentConfig.from_dict(_raw(alpha=0.0, K=1))
        self.assertEqual(len(ctx.exception.errors), 2)

    def test_overrides(self):
        cfg = ExperimentConfig.from_dict(_raw(horizon=1000, checkpoints=[500, 1000]))
        changed = cfg.with_overrides(runs=4, horizon=600, master_seed=12)
        self.assertEqual(changed.runs, 4)
        self.assertEqual(changed.horizon, 600)
        self.assertEqual(changed.checkpoints, [500])
        self.assertEqual(changed.master_seed, 12)
        self.assertEqual(changed.env_seed, 12)

    def test_seed_override_keeps_explicit_env_seed(self):
        cfg = ExperimentConfig.from_dict(_raw(env_seed=3, master_seed=1))
        self.assertEqual(cfg.with_overrides(master_seed=8).env_seed, 3)

    def test_environment_key_ignores_algorithm(self):
        gencb = ExperimentConfig.from_dict(_raw())
        lcb = ExperimentConfig.from_dict(_raw(algorithm="lcb_gate", name="other"))
        self.assertEqual(gencb.environment_key(), lcb.environment_key())
        self.assertNotEqual(gencb.environment_key(), ExperimentConfig.from_dict(_raw(K=12)).environment_key())


class TestConfigLoader(unittest.TestCase):
    """Test cases for loading configs from disk"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def _write(self, name, payload):
        path = os.path.join(self.temp_dir, name)
        with open(path, "w") as f:
            f.write(payload if isinstance(payload, str) else json.dumps(payload))
        return path

    def test_load_json(self):
        path = self._write("exp.json", _raw(K=6, runs=2))
        cfg = load_experiment_config(path)
        self.assertEqual(cfg.K, 6)
        self.assertEqual(cfg.runs, 2)

    def test_json_exponent_literals(self):
        path = self._write("exp.json", '{"schema_version": 1, "setting": "cmab", "algorithm": "gencb", '
                                       '"alpha": 5e-2, "mu0": 7E-1}')
        raw = ConfigLoader().load_config(path)
        self.assertEqual(raw["alpha"], 0.05)
        self.assertEqual(raw["mu0"], 0.7)
        cfg = load_experiment_config(path)
        self.assertEqual(cfg.alpha, 0.05)

    def test_load_yaml(self):
        path = self._write("exp.yaml", "schema_version: 1\nsetting: cmab\nalgorithm: gencb\nK: 8\nalpha: 0.1\n")
        cfg = load_experiment_config(path)
        self.assertEqual(cfg.K, 8)
        self.assertEqual(cfg.alpha, 0.1)

    def test_malformed_json(self):
        path = self._write("broken.json", '{"schema_version": 1,')
        with self.assertRaises(json.JSONDecodeError):
            ConfigLoader().load_config(path)

    def test_env_var_expansion(self):
        os.environ["CONBENCH_TEST_NAME"] = "expanded"
        try:
            path = self._write("exp.json", _raw(name="${CONBENCH_TEST_NAME}"))
            self.assertEqual(ConfigLoader().load_config(path)["name"], "expanded")
        finally:
            del os.environ["CONBENCH_TEST_NAME"]

    def test_invalid_config(self):
        path = self._write("bad.json", _raw(setting="nope"))
        with self.assertRaises(ConfigValidationError):
            ConfigLoader().load_config(path)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            ConfigLoader().load_config(os.path.join(self.temp_dir, "missing.json"))

    def test_shipped_configs_are_valid(self):
        config_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config")
        names = sorted(n for n in os.listdir(config_dir) if n.endswith(".json"))
        self.assertGreater(len(names), 0)
        for name in names:
            cfg = load_experiment_config(os.path.join(config_dir, name))
            self.assertGreaterEqual(cfg.runs, 1)


if __name__ == '__main__':
    unittest.main()
