"""Sample-path constraint audits over recorded traces."""

from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..conservative import ConservativeConfig
from .records import RunRecord

# Absolute slack for summation error over ~10⁵ rewards.
AUDIT_TOLERANCE = 1e-9


def _first_true(mask: NDArray[np.bool_]) -> Optional[int]:
    """1-based position of the first True entry, or None."""
    hits = np.flatnonzero(mask)
    return int(hits[0]) + 1 if hits.size else None


def constraint_slack(record: RunRecord, cfg: ConservativeConfig) -> NDArray[np.float64]:
    """Σ_{s≤t} r_s − (1 − α)μ₀t for t = 1…T."""
    t = np.arange(1, record.horizon + 1, dtype=np.float64)
    return record.cumulative_rewards() - (1.0 - cfg.alpha) * cfg.mu0 * t


def max_slack_deficit(record: RunRecord, cfg: ConservativeConfig) -> float:
    """Largest shortfall below the baseline over the run; zero when never violated."""
    if record.horizon == 0:
        return 0.0
    return float(max(0.0, -constraint_slack(record, cfg).min()))


def audit_constraint(record: RunRecord, cfg: ConservativeConfig) -> Optional[int]:
    """First t with Σ_{s≤t} r_s < (1 − α)μ₀t − tolerance, else None."""
    return _first_true(constraint_slack(record, cfg) < -AUDIT_TOLERANCE)


def empirical_mean_variance(record: RunRecord, rho: float) -> NDArray[np.float64]:
    """MV̂_t(𝒜) = ρμ̂_t − σ̂²_t recomputed from the raw rewards at every prefix."""
    t = np.arange(1, record.horizon + 1, dtype=np.float64)
    mean = np.cumsum(record.rewards) / t
    second = np.cumsum(record.rewards * record.rewards) / t
    return rho * mean - (second - mean * mean)


def audit_mv_constraint(record: RunRecord, cfg: ConservativeConfig, rho: float) -> Optional[int]:
    """First t with MV̂_t(𝒜) < (1 − α)ρμ₀ − tolerance, else None."""
    floor = (1.0 - cfg.alpha) * rho * cfg.mu0
    return _first_true(empirical_mean_variance(record, rho) < floor - AUDIT_TOLERANCE)


def max_mv_slack_deficit(record: RunRecord, cfg: ConservativeConfig, rho: float) -> float:
    """Largest shortfall of MV̂_t(𝒜) below (1 − α)ρμ₀; zero when never violated."""
    if record.horizon == 0:
        return 0.0
    floor = (1.0 - cfg.alpha) * rho * cfg.mu0
    return float(max(0.0, floor - empirical_mean_variance(record, rho).min()))
