"""MV-UCB: optimistic index on the empirical mean-variance ρμ̂ − σ̂²."""

import numpy as np
from numpy.typing import NDArray

from ..environments import SampleOutcome
from .base import BasePolicy
from .stats import MVStats, PolicyClock

# Width factor (5 + ρ) with confidence level δ_m = 1 / (12 K m³).
WIDTH_OFFSET = 5.0


def mvucb_indices(stats: MVStats, m: int, num_arms: int) -> NDArray[np.float64]:
    """MV̂_i + (5 + ρ)·√(ln(12 K m³) / (2 N_i)), +∞ for arms never pulled."""
    counts = stats.stats.counts
    safe = np.maximum(counts, 1)
    width = (WIDTH_OFFSET + stats.rho) * np.sqrt(np.log(12.0 * num_arms * max(m, 1) ** 3) / (2.0 * safe))
    return np.where(counts > 0, stats.mean_variance() + width, np.inf)


def mvucb_choose(stats: MVStats, clock: PolicyClock, num_arms: int) -> int:
    return int(np.argmax(mvucb_indices(stats, clock.m, num_arms)))


class MVUCBPolicy(BasePolicy):
    name = "mvucb"

    def __init__(self, num_arms: int, rho: float):
        super().__init__()
        self.num_arms = num_arms
        self.stats = MVStats.zeros(num_arms, rho)

    def choose(self) -> int:
        self.clock.tick()
        return mvucb_choose(self.stats, self.clock, self.num_arms)

    def update(self, action: int, outcome: SampleOutcome) -> None:
        self.stats.stats.record(int(action), outcome.reward)
