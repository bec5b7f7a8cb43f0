"""CLI for running, comparing and auditing conservative bandit experiments."""

import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich.console import Console
from rich.table import Table

from src.conservative import ConservativeConfig
from src.environments import reward_cap
from src.harness import (
    ExperimentConfig,
    build_environment,
    compare as compare_experiments,
    load_experiment_config,
    load_trace,
    run_experiment,
    run_grid,
)
from src.metrics import audit_constraint, audit_mv_constraint, max_mv_slack_deficit, max_slack_deficit
from src.utils.logging import setup_logging
from .config import DEFAULT_CONFIG, get_config_file, load_config, log_file_path, save_config

app = typer.Typer(help="Conservative bandit benchmark: run, compare and audit experiments.")
logger = logging.getLogger(__name__)
console = Console()

AUDIT_FAILURE_EXIT = 2

OutOption = typer.Option(None, "--out", help="Output directory (defaults to <run.out_dir>/<config name>).")
RunsOption = typer.Option(None, "--runs", help="Override the number of runs.")
HorizonOption = typer.Option(None, "--horizon", help="Override the horizon T.")
SeedOption = typer.Option(None, "--seed", help="Override the master seed.")
ThreadsOption = typer.Option(None, "--threads", help="Worker processes (defaults to run.threads).")


@app.callback()
def main(log_level: Optional[str] = typer.Option(None, "--log-level", help="Override the configured log level.")):
    """Main callback to load settings and setup logging."""
    try:
        config = load_config()
        level = (log_level or config["logging"]["level"]).upper()
        setup_logging(level, log_file=str(log_file_path(config)))
    except Exception as e:
        # Use print here since logger might not be configured yet
        print(f"Error during initialization: {e}")
        raise typer.Exit(code=1)


def _load(path: Path, runs: Optional[int], horizon: Optional[int], seed: Optional[int]) -> ExperimentConfig:
    cfg = load_experiment_config(path)
    if runs is None and horizon is None and seed is None:
        return cfg
    return cfg.with_overrides(runs=runs, horizon=horizon, master_seed=seed)


def _threads(threads: Optional[int]) -> int:
    return threads if threads is not None else int(load_config()["run"]["threads"])


def _out_dir(out: Optional[Path], name: str) -> Path:
    if out is not None:
        return out
    return Path(load_config()["run"]["out_dir"]) / name


@app.command()
def init():
    """Creates the default settings file."""
    config_file = get_config_file()
    if not config_file.exists():
        save_config(DEFAULT_CONFIG)
        logger.info(f"Created default config file at {config_file}")
    else:
        logger.info("Config file already exists.")


@app.command()
def run(
    config: Path = typer.Argument(..., help="Experiment config (JSON)."),
    out: Optional[Path] = OutOption,
    runs: Optional[int] = RunsOption,
    horizon: Optional[int] = HorizonOption,
    seed: Optional[int] = SeedOption,
    threads: Optional[int] = ThreadsOption,
    save_traces: bool = typer.Option(False, "--save-traces", help="Write one trace CSV per run."),
):
    """Runs one experiment and audits every trace."""
    try:
        cfg = _load(config, runs, horizon, seed)
        out_dir = _out_dir(out, cfg.name)
        summary = run_experiment(cfg, out_dir, threads=_threads(threads), save_traces=save_traces)
    except Exception as e:
        logger.error(f"Failed to run experiment: {e}")
        raise typer.Exit(code=1)

    table = Table(title=f"{cfg.name} ({cfg.runs} runs, T={cfg.horizon})")
    for column in ("algorithm", "final mean regret", "mean N0", "violating runs", "audit"):
        table.add_column(column)
    table.add_row(
        cfg.algorithm,
        f"{summary.final_mean_regret:.6g}",
        f"{summary.mean_n0:.6g}",
        str(summary.violations),
        "pass" if summary.passed else "FAIL",
    )
    console.print(table)
    console.print(f"Outputs written to {out_dir}")
    if not summary.passed:
        raise typer.Exit(code=AUDIT_FAILURE_EXIT)


@app.command()
def compare(
    configs: List[Path] = typer.Argument(..., help="Experiment configs sharing one environment."),
    out: Optional[Path] = OutOption,
    runs: Optional[int] = RunsOption,
    horizon: Optional[int] = HorizonOption,
    seed: Optional[int] = SeedOption,
    threads: Optional[int] = ThreadsOption,
    save_traces: bool = typer.Option(False, "--save-traces", help="Write one trace CSV per run."),
):
    """Runs several algorithms on one environment and tabulates them."""
    try:
        cfgs = [_load(path, runs, horizon, seed) for path in configs]
        out_dir = _out_dir(out, "comparison")
        result = compare_experiments(cfgs, out_dir, threads=_threads(threads), save_traces=save_traces)
    except Exception as e:
        logger.error(f"Failed to compare experiments: {e}")
        raise typer.Exit(code=1)

    table = Table(title="Comparison")
    for column in ("name", "algorithm", "final mean regret", "mean N0", "max slack deficit", "violations"):
        table.add_column(column)
    for row in result.rows:
        table.add_row(
            row.name,
            row.algorithm,
            f"{row.final_mean_regret:.6g}",
            f"{row.mean_n0:.6g}",
            f"{row.max_slack_deficit:.6g}",
            str(row.violations),
        )
    console.print(table)
    if result.dominance_holds is not None:
        console.print(f"GenCB default pulls <= LCB-gate default pulls: {result.dominance_holds}")
    console.print(f"Outputs written to {out_dir}")
    if not result.passed:
        raise typer.Exit(code=AUDIT_FAILURE_EXIT)


@app.command()
def audit(
    trace: Path = typer.Argument(..., help="Trace CSV written with --save-traces."),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Allowed fraction of baseline loss."),
    mu0: Optional[float] = typer.Option(None, "--mu0", help="Default arm reward."),
    rho: Optional[float] = typer.Option(None, "--rho", help="Audit the mean-variance constraint with this rho."),
    config: Optional[Path] = typer.Option(None, "--config", help="Take alpha, mu0 and rho from an experiment config."),
):
    """Checks a recorded trace against the sample-path constraint."""
    try:
        cap = 1.0
        if config is not None:
            cfg = load_experiment_config(config)
            env = build_environment(cfg)
            alpha = cfg.alpha if alpha is None else alpha
            mu0 = env.default_mean if mu0 is None else mu0
            cap = reward_cap(env)
            if cfg.is_mean_variance and rho is None:
                rho = cfg.rho
        if alpha is None or mu0 is None:
            raise ValueError("--alpha and --mu0 are required without --config")

        conservative = ConservativeConfig(alpha=alpha, mu0=mu0, reward_cap=cap)
        record = load_trace(trace)
        if rho is not None:
            first_violation = audit_mv_constraint(record, conservative, rho)
            deficit = max_mv_slack_deficit(record, conservative, rho)
        else:
            first_violation = audit_constraint(record, conservative)
            deficit = max_slack_deficit(record, conservative)
    except Exception as e:
        logger.error(f"Failed to audit trace: {e}")
        raise typer.Exit(code=1)

    kind = "mean-variance" if rho is not None else "reward"
    if first_violation is None:
        console.print(f"{trace}: {kind} constraint holds for all {record.horizon} steps")
        return
    console.print(f"{trace}: {kind} constraint violated first at t={first_violation} "
                  f"(max deficit {deficit:.6g})")
    raise typer.Exit(code=AUDIT_FAILURE_EXIT)


@app.command()
def grid(
    config: Path = typer.Argument(..., help="Base experiment config; the published grid for its setting is swept."),
    out: Optional[Path] = OutOption,
    runs: Optional[int] = RunsOption,
    horizon: Optional[int] = HorizonOption,
    seed: Optional[int] = SeedOption,
    threads: Optional[int] = ThreadsOption,
):
    """Runs every cell of the parameter grid for a setting."""
    try:
        cfg = _load(config, runs, horizon, seed)
        out_dir = _out_dir(out, f"{cfg.name}_grid")
        result = run_grid(cfg, out_dir, threads=_threads(threads))
    except Exception as e:
        logger.error(f"Failed to run grid: {e}")
        raise typer.Exit(code=1)

    table = Table(title=f"Grid for {cfg.name}")
    for column in ("cell", "final mean regret", "mean N0", "violating runs", "audit"):
        table.add_column(column)
    for summary in result.summaries:
        table.add_row(
            summary.config.name,
            f"{summary.final_mean_regret:.6g}",
            f"{summary.mean_n0:.6g}",
            str(summary.violations),
            "pass" if summary.passed else "FAIL",
        )
    console.print(table)
    if not result.passed:
        raise typer.Exit(code=AUDIT_FAILURE_EXIT)


if __name__ == "__main__":
    app()
