"""
Simulation
Environment and algorithm construction from a config, and the single-run loop
"""

import logging

from ..conservative import (
    MVCUCB,
    ConservativeAlgorithm,
    ConservativeConfig,
    GenCB,
    LCBGated,
    Unconstrained,
)
from ..environments import (
    CombEnv,
    Environment,
    derive_run_key,
    make_cmab_grid,
    make_comb_env,
    make_linear_env,
    reward_cap,
)
from ..metrics import RecordBuilder, RunRecord
from ..policies import BasePolicy, C2UCBPolicy, LinUCBPolicy, MVUCBPolicy, UCBPolicy
from .config import ExperimentConfig

logger = logging.getLogger(__name__)


def build_environment(cfg: ExperimentConfig) -> Environment:
    """The environment instance shared by every run of ``cfg``; seeded by ``env_seed``."""
    if cfg.setting == "clb":
        return make_linear_env(cfg.d, cfg.K, cfg.env_seed, mu0_fraction=cfg.mu0_fraction)
    if cfg.setting == "cccb":
        return make_comb_env(cfg.d, cfg.K, cfg.cardinality, cfg.env_seed, mu0_fraction=cfg.mu0_fraction)
    return make_cmab_grid(cfg.K, cfg.mu0, cfg.mu_hi, cfg.mu_lo, cfg.env_seed)


def conservative_config(cfg: ExperimentConfig, env: Environment) -> ConservativeConfig:
    return ConservativeConfig(alpha=cfg.alpha, mu0=env.default_mean, reward_cap=reward_cap(env))


def build_policy(cfg: ExperimentConfig, env: Environment) -> BasePolicy:
    if cfg.setting == "cmab":
        return UCBPolicy(env.num_arms)
    if cfg.setting == "mvcbp":
        return MVUCBPolicy(env.num_arms, cfg.rho)
    lam = max(cfg.lam, 1.0, env.feature_bound ** 2)
    if cfg.setting == "clb":
        return LinUCBPolicy(env.arms, lam, env.feature_bound, env.param_bound)
    return C2UCBPolicy(env.base_arms, cfg.cardinality, lam, env.feature_bound, env.param_bound)


def build_algorithm(cfg: ExperimentConfig, env: Environment) -> ConservativeAlgorithm:
    """Fresh learner for one run."""
    policy = build_policy(cfg, env)
    conservative = conservative_config(cfg, env)
    if cfg.algorithm == "gencb":
        return GenCB(policy, conservative)
    if cfg.algorithm == "lcb_gate":
        return LCBGated(policy, conservative)
    if cfg.algorithm == "mvcucb":
        return MVCUCB(policy, conservative, unsafe=cfg.unsafe_mv)
    return Unconstrained(policy, conservative)


def simulate_run(cfg: ExperimentConfig, env: Environment, run_index: int) -> RunRecord:
    """Play ``cfg.horizon`` steps of a fresh learner on the run's reward stream."""
    run_key = derive_run_key(cfg.master_seed, run_index)
    algorithm = build_algorithm(cfg, env)
    cardinality = env.cardinality if isinstance(env, CombEnv) else None
    builder = RecordBuilder(cfg.horizon, cardinality)

    for _ in range(cfg.horizon):
        result = algorithm.step(env, run_key)
        builder.append(result.action, result.reward, result.is_default)

    if isinstance(algorithm, LCBGated) and algorithm.dominance_breaks:
        logger.error("run %d: LCB gate opened %d times while the reward gate was closed",
                     run_index, algorithm.dominance_breaks)

    return builder.build(
        setting=cfg.setting,
        algorithm=cfg.algorithm,
        env_name=env.name,
        run_index=run_index,
        run_key=run_key,
    )
