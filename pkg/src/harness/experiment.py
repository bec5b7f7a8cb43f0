"""
Experiment Runner
Seeded replications on a worker pool, per-run audits, aggregated curves and comparisons
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from ..conservative import ConservativeConfig, check_mv_precondition
from ..environments import describe
from ..metrics import (
    Envelope,
    aggregate,
    audit_constraint,
    audit_mv_constraint,
    cumulative_mv_regret,
    max_mv_slack_deficit,
    max_slack_deficit,
    pseudo_regret,
)
from ..utils.logging import timer_decorator
from .config import ExperimentConfig
from .output import write_csv, write_envelope_csv, write_json, write_runs_csv, write_trace
from .simulation import build_environment, conservative_config, simulate_run

logger = logging.getLogger(__name__)

# Slack on the N₀ dominance check for floating-point means.
DOMINANCE_TOLERANCE = 1e-12


class MismatchedEnvironmentError(ValueError):
    """Raised when compared configs do not share one environment and protocol."""


@dataclass
class RunSummary:
    run_index: int
    final_regret: float
    n0_final: int
    first_violation: Optional[int]
    max_slack_deficit: float
    n0_at: Dict[int, int] = field(default_factory=dict)
    final_mv_regret: Optional[float] = None


@dataclass
class RunOutcome:
    """What a worker sends back: the run summary plus its curves."""
    summary: RunSummary
    regret: NDArray[np.float64]
    mv_regret: Optional[NDArray[np.float64]] = None


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    environment: Dict[str, Any]
    runs: List[RunSummary]
    regret: Envelope
    mv_regret: Optional[Envelope]
    violations_expected: bool
    passed: bool
    out_dir: Optional[Path] = None

    @property
    def violations(self) -> int:
        return sum(1 for r in self.runs if r.first_violation is not None)

    @property
    def final_mean_regret(self) -> float:
        return float(np.mean([r.final_regret for r in self.runs]))

    @property
    def mean_n0(self) -> float:
        return float(np.mean([r.n0_final for r in self.runs]))

    @property
    def max_slack_deficit(self) -> float:
        return float(max(r.max_slack_deficit for r in self.runs))

    def algorithm_stats(self) -> Dict[str, Any]:
        finals = np.array([r.final_regret for r in self.runs])
        n0 = np.array([r.n0_final for r in self.runs], dtype=np.float64)
        stats: Dict[str, Any] = {
            "final_mean_regret": self.final_mean_regret,
            "final_max_regret": float(finals.max()),
            "final_min_regret": float(finals.min()),
            "final_regret_stderr": float(finals.std(ddof=1) / math.sqrt(len(finals))) if len(finals) > 1 else 0.0,
            "mean_N0": self.mean_n0,
            "median_N0": float(np.median(n0)),
            "violations": self.violations,
            "violating_runs": [r.run_index for r in self.runs if r.first_violation is not None],
            "max_slack_deficit": self.max_slack_deficit,
            "mean_N0_at": {
                str(c): float(np.mean([r.n0_at[c] for r in self.runs])) for c in self.config.checkpoints
            },
        }
        if self.mv_regret is not None:
            stats["final_mean_mv_regret"] = float(np.mean([r.final_mv_regret for r in self.runs]))
        return stats

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema_version": 1,
            "config_echo": self.config.to_dict(),
            "environment": self.environment,
            "audit": "mean_variance" if self.config.is_mean_variance else "reward",
            "per_algorithm": {self.config.algorithm: self.algorithm_stats()},
            "runs": [
                {"run": r.run_index, "first_violation": r.first_violation, "N0_final": r.n0_final}
                for r in self.runs
            ],
            "violations_expected": self.violations_expected,
            "passed": self.passed,
        }


def mv_precondition_holds(cfg: ExperimentConfig) -> bool:
    """α·ρ·μ₀ > 2 for the configured MV experiment."""
    return check_mv_precondition(ConservativeConfig(cfg.alpha, cfg.mu0), cfg.rho, unsafe=True)


def _run_worker(cfg: ExperimentConfig, run_index: int, trace_dir: Optional[Path]) -> RunOutcome:
    env = build_environment(cfg)
    record = simulate_run(cfg, env, run_index)
    if trace_dir is not None:
        write_trace(trace_dir / f"run_{run_index}.csv", record)

    conservative = conservative_config(cfg, env)
    counts = record.default_counts()
    regret = pseudo_regret(record, env).values
    mv_regret = None
    if cfg.is_mean_variance:
        mv_regret = cumulative_mv_regret(record, env, cfg.rho).values
        first_violation = audit_mv_constraint(record, conservative, cfg.rho)
        deficit = max_mv_slack_deficit(record, conservative, cfg.rho)
    else:
        first_violation = audit_constraint(record, conservative)
        deficit = max_slack_deficit(record, conservative)

    summary = RunSummary(
        run_index=run_index,
        final_regret=float(regret[-1]),
        n0_final=int(counts[-1]),
        first_violation=first_violation,
        max_slack_deficit=deficit,
        n0_at={c: int(counts[c - 1]) for c in cfg.checkpoints},
        final_mv_regret=float(mv_regret[-1]) if mv_regret is not None else None,
    )
    return RunOutcome(summary=summary, regret=regret, mv_regret=mv_regret)


def execute_runs(cfg: ExperimentConfig, threads: int = 1,
                 trace_dir: Optional[Path] = None) -> List[RunOutcome]:
    """All replications of ``cfg``, ordered by run index whatever the pool size."""
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if trace_dir is not None:
        trace_dir.mkdir(parents=True, exist_ok=True)
    indices = range(cfg.runs)
    if threads == 1 or cfg.runs == 1:
        return [_run_worker(cfg, i, trace_dir) for i in indices]
    with ProcessPoolExecutor(max_workers=min(threads, cfg.runs)) as pool:
        return list(pool.map(_run_worker, repeat(cfg), indices, repeat(trace_dir)))


def _verdict(cfg: ExperimentConfig, runs: Sequence[RunSummary]) -> tuple:
    """(violations_expected, passed) for the audit results of one experiment."""
    violating = [r.run_index for r in runs if r.first_violation is not None]
    unguaranteed = cfg.algorithm == "mvcucb" and not mv_precondition_holds(cfg)
    expected = cfg.expect_violations or unguaranteed

    if not violating:
        if cfg.expect_violations:
            logger.warning("%s: violations were expected but every run satisfied the constraint", cfg.name)
        return expected, True
    if expected:
        logger.info("%s: %d/%d runs violate the constraint (expected)", cfg.name, len(violating), len(runs))
        return expected, True
    if cfg.is_unconstrained:
        logger.warning("%s: negative control violated the constraint in runs %s; "
                       "set expect_violations to accept", cfg.name, violating)
    else:
        logger.error("%s: constraint violated in runs %s", cfg.name, violating)
    return expected, False


@timer_decorator
def run_experiment(cfg: ExperimentConfig, out_dir: Optional[Union[str, Path]] = None,
                   threads: int = 1, save_traces: bool = False) -> ExperimentSummary:
    """Run every replication of ``cfg``, audit each trace and write the outputs to ``out_dir``."""
    out_path = Path(out_dir) if out_dir is not None else None
    trace_dir = out_path / "traces" if (out_path is not None and save_traces) else None
    env = build_environment(cfg)
    logger.info("Running %s: %s on %s, %d runs x %d steps, %d worker(s)",
                cfg.name, cfg.algorithm, env.name, cfg.runs, cfg.horizon, threads)

    outcomes = execute_runs(cfg, threads=threads, trace_dir=trace_dir)
    runs = [o.summary for o in outcomes]
    regret = aggregate([o.regret for o in outcomes])
    mv_regret = aggregate([o.mv_regret for o in outcomes]) if cfg.is_mean_variance else None
    violations_expected, passed = _verdict(cfg, runs)

    summary = ExperimentSummary(
        config=cfg,
        environment=describe(env),
        runs=runs,
        regret=regret,
        mv_regret=mv_regret,
        violations_expected=violations_expected,
        passed=passed,
        out_dir=out_path,
    )
    if out_path is not None:
        write_experiment(summary, out_path)

    logger.info("%s finished: final mean regret %.6g, mean N0 %.6g, %d violating run(s)",
                cfg.name, summary.final_mean_regret, summary.mean_n0, summary.violations)
    return summary


def write_experiment(summary: ExperimentSummary, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    write_envelope_csv(out_dir / "regret.csv", summary.regret)
    if summary.mv_regret is not None:
        write_envelope_csv(out_dir / "mv_regret.csv", summary.mv_regret)
    write_runs_csv(out_dir / "runs.csv", summary.runs, summary.config.checkpoints)
    write_json(out_dir / "summary.json", summary.to_json())
    logger.debug("Wrote experiment outputs to %s", out_dir)


@dataclass
class ComparisonRow:
    name: str
    algorithm: str
    final_mean_regret: float
    mean_n0: float
    max_slack_deficit: float
    violations: int
    passed: bool


@dataclass
class ComparisonTable:
    rows: List[ComparisonRow]
    dominance_holds: Optional[bool]
    summaries: List[ExperimentSummary] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and self.dominance_holds is not False

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema_version": 1,
            "rows": [
                {
                    "name": r.name,
                    "algorithm": r.algorithm,
                    "final_mean_regret": r.final_mean_regret,
                    "mean_N0": r.mean_n0,
                    "max_slack_deficit": r.max_slack_deficit,
                    "violations": r.violations,
                    "passed": r.passed,
                }
                for r in self.rows
            ],
            "gencb_default_pulls_dominate": self.dominance_holds,
            "passed": self.passed,
        }


def check_environments_match(cfgs: Sequence[ExperimentConfig]) -> None:
    """Raise ``MismatchedEnvironmentError`` unless every config shares one environment."""
    if not cfgs:
        raise ValueError("compare needs at least one config")
    reference = cfgs[0].environment_key()
    for cfg in cfgs[1:]:
        key = cfg.environment_key()
        if key != reference:
            diff = sorted({k for k, _ in set(key) ^ set(reference)})
            raise MismatchedEnvironmentError(
                f"{cfg.name} and {cfgs[0].name} differ in environment fields {diff}"
            )
    if len({cfg.master_seed for cfg in cfgs}) > 1:
        logger.warning("Compared configs use different master seeds; runs do not share random numbers")


def _directory_names(cfgs: Sequence[ExperimentConfig]) -> List[str]:
    names: List[str] = []
    for cfg in cfgs:
        name = cfg.name
        suffix = 2
        while name in names:
            name = f"{cfg.name}_{suffix}"
            suffix += 1
        names.append(name)
    return names


def _gencb_dominates(rows: Sequence[ComparisonRow]) -> Optional[bool]:
    gencb = [r for r in rows if r.algorithm == "gencb"]
    lcb = [r for r in rows if r.algorithm == "lcb_gate"]
    if not gencb or not lcb:
        return None
    holds = all(g.mean_n0 <= l.mean_n0 + DOMINANCE_TOLERANCE for g in gencb for l in lcb)
    if not holds:
        logger.error("GenCB plays the default arm more often than the LCB gate: %s vs %s",
                     [g.mean_n0 for g in gencb], [l.mean_n0 for l in lcb])
    return holds


@timer_decorator
def compare(cfgs: Sequence[ExperimentConfig], out_dir: Optional[Union[str, Path]] = None,
            threads: int = 1, save_traces: bool = False) -> ComparisonTable:
    """Run several algorithms on one environment and tabulate them side by side."""
    cfgs = list(cfgs)
    check_environments_match(cfgs)
    out_path = Path(out_dir) if out_dir is not None else None

    summaries = []
    for cfg, dirname in zip(cfgs, _directory_names(cfgs)):
        sub_dir = out_path / dirname if out_path is not None else None
        summaries.append(run_experiment(cfg, sub_dir, threads=threads, save_traces=save_traces))

    rows = [
        ComparisonRow(
            name=s.config.name,
            algorithm=s.config.algorithm,
            final_mean_regret=s.final_mean_regret,
            mean_n0=s.mean_n0,
            max_slack_deficit=s.max_slack_deficit,
            violations=s.violations,
            passed=s.passed,
        )
        for s in summaries
    ]
    table = ComparisonTable(rows=rows, dominance_holds=_gencb_dominates(rows), summaries=summaries)

    if out_path is not None:
        write_csv(
            out_path / "comparison.csv",
            ("name", "algorithm", "final_mean_regret", "mean_N0", "max_slack_deficit", "violations"),
            [(r.name, r.algorithm, r.final_mean_regret, r.mean_n0, r.max_slack_deficit, r.violations)
             for r in rows],
        )
        write_json(out_path / "comparison.json", table.to_json())
    return table
