"""Budget bookkeeping for the conservative gates."""

import math
from dataclasses import dataclass


class ConservativeConfigError(ValueError):
    """Raised when conservative parameters violate the problem assumptions."""


@dataclass(frozen=True)
class ConservativeConfig:
    """Constraint parameters: keep at least a (1 − α) fraction of the default arm's reward."""
    alpha: float
    mu0: float
    reward_cap: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConservativeConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.mu0 <= 0.0:
            raise ConservativeConfigError(f"mu0 must be positive, got {self.mu0}")
        if self.reward_cap <= 0.0:
            raise ConservativeConfigError(f"reward_cap must be positive, got {self.reward_cap}")

    def baseline(self, t: int) -> float:
        """(1 − α)·μ₀·t, the least cumulative reward allowed after t steps."""
        return (1.0 - self.alpha) * self.mu0 * t


@dataclass
class BudgetLedger:
    """Regular-pull reward r_S, default pulls N₀ and regular pulls m; t = N₀ + m."""
    r_s: float = 0.0
    n0: int = 0
    m: int = 0

    @property
    def t(self) -> int:
        return self.n0 + self.m

    def record_regular(self, reward: float, reward_cap: float = math.inf) -> None:
        """Adds one regular pull; rewards outside [0, reward_cap] break r_S <= m * reward_cap."""
        if not 0.0 <= reward <= reward_cap:
            raise ValueError(f"regular reward {reward} outside [0, {reward_cap}]")
        self.m += 1
        self.r_s += reward

    def record_default(self) -> None:
        self.n0 += 1

    def total_reward(self, mu0: float) -> float:
        return self.r_s + self.n0 * mu0


@dataclass
class MVLedger:
    """Trajectory sufficient statistics Σr and Σr² for the empirical mean-variance."""
    total: float = 0.0
    total_sq: float = 0.0
    n0: int = 0
    m: int = 0

    @property
    def t(self) -> int:
        return self.n0 + self.m

    def record(self, reward: float, is_default: bool) -> None:
        self.total += reward
        self.total_sq += reward * reward
        if is_default:
            self.n0 += 1
        else:
            self.m += 1

    def scaled_mean_variance(self, rho: float) -> float:
        """t·MV̂_t(𝒜) = ρΣr − (Σr² − (Σr)²/t); zero before the first step."""
        t = self.t
        if t == 0:
            return 0.0
        return rho * self.total - (self.total_sq - self.total * self.total / t)

    def mean_variance(self, rho: float) -> float:
        """MV̂_t(𝒜) = ρ·μ̂_t − σ̂²_t."""
        t = self.t
        if t == 0:
            raise ValueError("empirical mean-variance is undefined before the first step")
        mean = self.total / t
        return rho * mean - (self.total_sq / t - mean * mean)
