"""Sufficient statistics shared by the index policies."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

# Floating-point cancellation in E[z²] − μ̂² may leave values just below zero.
VARIANCE_CLAMP = -1e-12


@dataclass
class ArmStats:
    """Per-arm pull count N_i, reward sum and sum of squared rewards."""
    counts: NDArray[np.int64]
    sums: NDArray[np.float64]
    sum_sqs: NDArray[np.float64]

    @classmethod
    def zeros(cls, num_arms: int) -> "ArmStats":
        return cls(
            counts=np.zeros(num_arms, dtype=np.int64),
            sums=np.zeros(num_arms, dtype=np.float64),
            sum_sqs=np.zeros(num_arms, dtype=np.float64),
        )

    @property
    def num_arms(self) -> int:
        return int(self.counts.shape[0])

    def record(self, arm: int, reward: float) -> None:
        self.counts[arm] += 1
        self.sums[arm] += reward
        self.sum_sqs[arm] += reward * reward

    def means(self) -> NDArray[np.float64]:
        """Empirical means μ̂_i; zero for arms never pulled."""
        safe = np.maximum(self.counts, 1)
        return np.where(self.counts > 0, self.sums / safe, 0.0)

    def variances(self) -> NDArray[np.float64]:
        """Population variances σ̂²_i = sum_sq/N − (sum/N)²."""
        safe = np.maximum(self.counts, 1)
        mu = self.sums / safe
        var = self.sum_sqs / safe - mu * mu
        var = np.where((var < 0.0) & (var > VARIANCE_CLAMP), 0.0, var)
        return np.where(self.counts > 0, var, 0.0)


@dataclass
class PolicyClock:
    """Number of regular-arm pulls m made by the wrapped policy."""
    m: int = 0

    def tick(self) -> int:
        self.m += 1
        return self.m


@dataclass
class MVStats:
    """Per-arm statistics with the mean-variance weight ρ."""
    stats: ArmStats
    rho: float

    @classmethod
    def zeros(cls, num_arms: int, rho: float) -> "MVStats":
        if rho <= 0:
            raise ValueError(f"rho must be positive, got {rho}")
        return cls(stats=ArmStats.zeros(num_arms), rho=float(rho))

    def mean_variance(self) -> NDArray[np.float64]:
        """MV̂_i = ρ·μ̂_i − σ̂²_i."""
        return self.rho * self.stats.means() - self.stats.variances()
