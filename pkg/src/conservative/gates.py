"""
Budget Gates

Each gate decides, before step t + 1 (t = steps completed), whether a regular
pull is affordable when it is assumed to return the worst-case reward 0.
"""

import math
from typing import Optional

import numpy as np

from ..policies import ArmStats
from .ledger import BudgetLedger, ConservativeConfig, ConservativeConfigError, MVLedger

# Per-pull bound on the exploration risk for rewards in [0, 1].
MV_EXPLORATION_SLACK = 2.0


def gencb_gate(ledger: BudgetLedger, cfg: ConservativeConfig) -> bool:
    """r_S + N₀μ₀ ≥ (1 − α)μ₀(t + 1)."""
    return ledger.r_s + ledger.n0 * cfg.mu0 >= cfg.baseline(ledger.t + 1)


def lcb_reward_bound(stats: ArmStats, t: int) -> float:
    """Σ_i N_i · max(0, μ̂_i − √(2 ln t / N_i)) over pulled arms."""
    counts = stats.counts
    pulled = counts > 0
    if not np.any(pulled):
        return 0.0
    n = counts[pulled].astype(np.float64)
    width = np.sqrt(2.0 * math.log(max(t, 1)) / n)
    lcb = np.maximum(0.0, stats.means()[pulled] - width)
    return float(np.sum(n * lcb))


def lcb_gate(stats: ArmStats, ledger: BudgetLedger, cfg: ConservativeConfig, t: Optional[int] = None) -> bool:
    """Baseline gate that checks the constraint with lower confidence bounds.

    Since every LCB is at most μ̂_i, the bound never exceeds r_S and this gate
    never opens when :func:`gencb_gate` is closed.
    """
    t = ledger.t if t is None else t
    return lcb_reward_bound(stats, t) + ledger.n0 * cfg.mu0 >= cfg.baseline(t + 1)


def check_mv_precondition(cfg: ConservativeConfig, rho: float, unsafe: bool = False) -> bool:
    """Return whether α·ρ·μ₀ > 2; raise unless ``unsafe`` when it fails."""
    margin = cfg.alpha * rho * cfg.mu0
    holds = margin > MV_EXPLORATION_SLACK
    if not holds and not unsafe:
        raise ConservativeConfigError(
            f"mean-variance gate requires alpha*rho*mu0 > {MV_EXPLORATION_SLACK:g} "
            f"(rho > {MV_EXPLORATION_SLACK / (cfg.alpha * cfg.mu0):.4g}), got {margin:.6g}"
        )
    return holds


def mvcucb_gate(ledger: MVLedger, cfg: ConservativeConfig, rho: float) -> bool:
    """t·MV̂_t(𝒜) − 2 ≥ (1 − α)·ρμ₀·(t + 1)."""
    mv0 = rho * cfg.mu0
    return ledger.scaled_mean_variance(rho) - MV_EXPLORATION_SLACK >= (1.0 - cfg.alpha) * mv0 * (ledger.t + 1)
