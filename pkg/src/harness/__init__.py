"""
Experiment Harness
Config handling, seeded simulation, audited experiment runs, comparisons and grids
"""

from .config import DEFAULT_HORIZON, DEFAULT_RUNS, ExperimentConfig, load_experiment_config
from .experiment import (
    ComparisonRow,
    ComparisonTable,
    ExperimentSummary,
    MismatchedEnvironmentError,
    RunSummary,
    compare,
    execute_runs,
    mv_precondition_holds,
    run_experiment,
)
from .grid import DEFAULT_GRIDS, GridResult, expand_grid, run_grid
from .output import load_trace, write_trace
from .simulation import build_algorithm, build_environment, conservative_config, simulate_run

__all__ = [
    "DEFAULT_GRIDS",
    "DEFAULT_HORIZON",
    "DEFAULT_RUNS",
    "ComparisonRow",
    "ComparisonTable",
    "ExperimentConfig",
    "ExperimentSummary",
    "GridResult",
    "MismatchedEnvironmentError",
    "RunSummary",
    "build_algorithm",
    "build_environment",
    "compare",
    "conservative_config",
    "execute_runs",
    "expand_grid",
    "load_experiment_config",
    "load_trace",
    "mv_precondition_holds",
    "run_experiment",
    "run_grid",
    "simulate_run",
    "write_trace",
]
