"""UCB1 index policy for the K-armed setting."""

import numpy as np
from numpy.typing import NDArray

from ..environments import SampleOutcome
from .base import BasePolicy
from .stats import ArmStats, PolicyClock


def ucb_indices(stats: ArmStats, m: int) -> NDArray[np.float64]:
    """μ̂_i + √(2 ln m / N_i), with +∞ for arms never pulled."""
    counts = stats.counts
    safe = np.maximum(counts, 1)
    bonus = np.sqrt(2.0 * np.log(max(m, 1)) / safe)
    return np.where(counts > 0, stats.means() + bonus, np.inf)


def ucb_choose(stats: ArmStats, clock: PolicyClock) -> int:
    """Arm with the largest UCB index; lowest index wins ties."""
    return int(np.argmax(ucb_indices(stats, clock.m)))


class UCBPolicy(BasePolicy):
    name = "ucb"

    def __init__(self, num_arms: int):
        super().__init__()
        self.stats = ArmStats.zeros(num_arms)

    def choose(self) -> int:
        self.clock.tick()
        return ucb_choose(self.stats, self.clock)

    def update(self, action: int, outcome: SampleOutcome) -> None:
        self.stats.record(int(action), outcome.reward)
