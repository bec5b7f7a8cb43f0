"""
Environments
Seeded Bernoulli bandit environments and their counter-based reward streams
"""

from .bandits import (
    Action,
    CombEnv,
    Environment,
    EnvironmentConfigError,
    KArmedEnv,
    LinearEnv,
    SampleOutcome,
    action_value,
    describe,
    make_cmab_grid,
    make_comb_env,
    make_linear_env,
    optimal_value,
    reward_cap,
    sample,
    sample_default,
)
from .rng import derive_run_key, uniform

__all__ = [
    "Action",
    "CombEnv",
    "Environment",
    "EnvironmentConfigError",
    "KArmedEnv",
    "LinearEnv",
    "SampleOutcome",
    "action_value",
    "derive_run_key",
    "describe",
    "make_cmab_grid",
    "make_comb_env",
    "make_linear_env",
    "optimal_value",
    "reward_cap",
    "sample",
    "sample_default",
    "uniform",
]
