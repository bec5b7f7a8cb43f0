"""
Bandit Environments

Seeded Bernoulli environments for the K-armed, linear and contextual
combinatorial settings. Each environment is immutable after construction and
sampling is a pure function of (env, run_key, t, arm).
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from .rng import uniform, uniforms

Action = Union[int, Sequence[int], None]


class EnvironmentConfigError(ValueError):
    """Raised when environment parameters violate the problem assumptions."""


def _frozen(values: Any) -> NDArray[np.float64]:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SampleOutcome:
    """Reward of one pull; ``per_base_rewards`` is filled for super arms only."""
    reward: float
    per_base_rewards: Optional[NDArray[np.float64]] = None


@dataclass(frozen=True, eq=False)
class KArmedEnv:
    """K Bernoulli arms plus a default arm with known constant reward μ₀."""
    means: NDArray[np.float64]
    default_mean: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "means", _frozen(self.means))
        _check_means(self.means, "arm")
        _check_default(self.default_mean, float(self.means.max()))

    @property
    def num_arms(self) -> int:
        return int(self.means.shape[0])

    @property
    def name(self) -> str:
        return f"cmab(K={self.num_arms},mu0={self.default_mean:g},seed={self.seed})"


@dataclass(frozen=True, eq=False)
class LinearEnv:
    """Finite-armed linear bandit: arm x has Bernoulli reward with mean xᵀθ*."""
    theta_star: NDArray[np.float64]
    arms: NDArray[np.float64]
    default_mean: float
    seed: int
    feature_bound: float = 1.0
    param_bound: float = 1.0
    means: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta_star", _frozen(self.theta_star))
        object.__setattr__(self, "arms", _frozen(np.atleast_2d(self.arms)))
        _check_geometry(self.arms, self.theta_star, self.feature_bound, self.param_bound)
        object.__setattr__(self, "means", _frozen(self.arms @ self.theta_star))
        _check_means(self.means, "arm")
        _check_default(self.default_mean, float(self.means.max()))

    @property
    def num_arms(self) -> int:
        return int(self.arms.shape[0])

    @property
    def dim(self) -> int:
        return int(self.arms.shape[1])

    @property
    def name(self) -> str:
        return f"clb(d={self.dim},K={self.num_arms},mu0={self.default_mean:.6g},seed={self.seed})"


@dataclass(frozen=True, eq=False)
class CombEnv:
    """Contextual combinatorial semi-bandit over subsets of exactly ``cardinality`` base arms.

    The super-arm reward is f(A, w) = Σ_{e∈A} w_e, so the exact oracle is top-k.
    """
    base_arms: NDArray[np.float64]
    theta_star: NDArray[np.float64]
    cardinality: int
    default_mean: float
    seed: int
    feature_bound: float = 1.0
    param_bound: float = 1.0
    means: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta_star", _frozen(self.theta_star))
        object.__setattr__(self, "base_arms", _frozen(np.atleast_2d(self.base_arms)))
        _check_geometry(self.base_arms, self.theta_star, self.feature_bound, self.param_bound)
        if not 1 <= self.cardinality <= self.base_arms.shape[0]:
            raise EnvironmentConfigError(
                f"cardinality must lie in [1, K={self.base_arms.shape[0]}], got {self.cardinality}"
            )
        object.__setattr__(self, "means", _frozen(self.base_arms @ self.theta_star))
        _check_means(self.means, "base arm")
        _check_default(self.default_mean, self.optimal_value)

    @property
    def num_arms(self) -> int:
        return int(self.base_arms.shape[0])

    @property
    def dim(self) -> int:
        return int(self.base_arms.shape[1])

    @property
    def optimal_value(self) -> float:
        top = np.sort(self.means)[::-1][: self.cardinality]
        return float(top.sum())

    @property
    def name(self) -> str:
        return (
            f"cccb(d={self.dim},K={self.num_arms},card={self.cardinality},"
            f"mu0={self.default_mean:.6g},seed={self.seed})"
        )


Environment = Union[KArmedEnv, LinearEnv, CombEnv]


def _check_means(means: NDArray[np.float64], label: str) -> None:
    if means.ndim != 1 or means.shape[0] < 1:
        raise EnvironmentConfigError(f"{label} means must be a non-empty vector")
    if np.any(means < 0.0) or np.any(means > 1.0):
        raise EnvironmentConfigError(f"every {label} mean must lie in [0, 1], got range "
                                     f"[{means.min():.6g}, {means.max():.6g}]")


def _check_default(mu0: float, best: float) -> None:
    if not 0.0 < mu0 < best:
        raise EnvironmentConfigError(
            f"default mean must satisfy 0 < mu0 < best mean ({best:.6g}), got {mu0}"
        )


def _check_geometry(arms: NDArray[np.float64], theta: NDArray[np.float64],
                    feature_bound: float, param_bound: float) -> None:
    if arms.shape[1] != theta.shape[0]:
        raise EnvironmentConfigError(
            f"arm dimension {arms.shape[1]} does not match theta dimension {theta.shape[0]}"
        )
    tol = 1e-9
    if np.linalg.norm(arms, axis=1).max() > feature_bound + tol:
        raise EnvironmentConfigError(f"an arm exceeds the feature bound L={feature_bound}")
    if np.linalg.norm(theta) > param_bound + tol:
        raise EnvironmentConfigError(f"theta_star exceeds the parameter bound S={param_bound}")


def make_cmab_grid(K: int, mu0: float, mu_hi: float, mu_lo: float, seed: int) -> KArmedEnv:
    """K arms with means in arithmetic progression from ``mu_hi`` down to ``mu_lo``."""
    if K < 2:
        raise EnvironmentConfigError(f"K must be >= 2, got {K}")
    if not 0.0 < mu_lo < mu_hi <= 1.0:
        raise EnvironmentConfigError(f"need 0 < mu_lo < mu_hi <= 1, got mu_lo={mu_lo}, mu_hi={mu_hi}")
    if not 0.0 < mu0 < mu_hi:
        raise EnvironmentConfigError(
            f"default mean must satisfy 0 < mu0 < mu_hi={mu_hi} (default arm would be optimal), got {mu0}"
        )
    return KArmedEnv(means=np.linspace(mu_hi, mu_lo, K), default_mean=mu0, seed=seed)


def _linear_instance(d: int, K: int, seed: int):
    """Unit-norm arms and θ* with every mean xᵀθ* in [0.1, 0.9].

    For d ≥ 2 the last coordinate is a constant bias: directions u are uniform on
    the unit sphere of ℝ^{d-1}, θ' is uniform in the unit ball, and the raw scores
    uᵀθ' are mapped affinely onto [0.1, 0.9] through θ*.
    """
    gen = np.random.Generator(np.random.Philox(seed))
    if d == 1:
        arms = gen.uniform(0.1, 0.9, size=(K, 1))
        theta = np.ones(1)
        return arms, theta

    u = gen.standard_normal((K, d - 1))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    direction = gen.standard_normal(d - 1)
    direction /= np.linalg.norm(direction)
    theta_raw = direction * gen.random() ** (1.0 / (d - 1))

    raw = u @ theta_raw
    lo, hi = float(raw.min()), float(raw.max())
    if hi - lo < 1e-12:
        scale, shift = 0.0, 0.5
    else:
        scale = 0.8 / (hi - lo)
        shift = 0.1 - scale * lo

    arms = np.hstack([u, np.ones((K, 1))]) / math.sqrt(2.0)
    theta = math.sqrt(2.0) * np.concatenate([scale * theta_raw, [shift]])
    return arms, theta


def make_linear_env(d: int, K: int, seed: int, mu0_fraction: float = 0.9) -> LinearEnv:
    """Pseudo-random linear instance with μ₀ = mu0_fraction · max arm mean."""
    if d < 1 or K < 2:
        raise EnvironmentConfigError(f"need d >= 1 and K >= 2, got d={d}, K={K}")
    if not 0.0 < mu0_fraction < 1.0:
        raise EnvironmentConfigError(f"mu0_fraction must lie in (0, 1), got {mu0_fraction}")
    arms, theta = _linear_instance(d, K, seed)
    best = float((arms @ theta).max())
    return LinearEnv(
        theta_star=theta,
        arms=arms,
        default_mean=mu0_fraction * best,
        seed=seed,
        feature_bound=1.0,
        param_bound=max(1.0, float(np.linalg.norm(theta))),
    )


def make_comb_env(d: int, K: int, cardinality: int, seed: int, mu0_fraction: float = 0.9) -> CombEnv:
    """Combinatorial instance over the same base-arm construction as :func:`make_linear_env`.

    μ₀ is a fraction of the optimal super-arm reward.
    """
    if d < 1 or K < 2:
        raise EnvironmentConfigError(f"need d >= 1 and K >= 2, got d={d}, K={K}")
    if not 1 <= cardinality <= K:
        raise EnvironmentConfigError(f"cardinality must lie in [1, K={K}], got {cardinality}")
    if not 0.0 < mu0_fraction < 1.0:
        raise EnvironmentConfigError(f"mu0_fraction must lie in (0, 1), got {mu0_fraction}")
    arms, theta = _linear_instance(d, K, seed)
    means = arms @ theta
    best = float(np.sort(means)[::-1][:cardinality].sum())
    return CombEnv(
        base_arms=arms,
        theta_star=theta,
        cardinality=cardinality,
        default_mean=mu0_fraction * best,
        seed=seed,
        feature_bound=1.0,
        param_bound=max(1.0, float(np.linalg.norm(theta))),
    )


def reward_cap(env: Environment) -> float:
    """Largest reward a single regular pull can return."""
    return float(env.cardinality) if isinstance(env, CombEnv) else 1.0


def _check_subset(env: CombEnv, action: Sequence[int]) -> NDArray[np.int64]:
    subset = np.asarray(action, dtype=np.int64).reshape(-1)
    if subset.shape[0] != env.cardinality or len(set(subset.tolist())) != subset.shape[0]:
        raise IndexError(f"super arm must hold {env.cardinality} distinct base arms, got {subset.tolist()}")
    if subset.min() < 0 or subset.max() >= env.num_arms:
        raise IndexError(f"base arm index out of range [0, {env.num_arms}): {subset.tolist()}")
    return subset


def sample(env: Environment, action: Action, t: int, run_key: int = 0) -> SampleOutcome:
    """Bernoulli reward for pulling ``action`` at timestep ``t`` (1-based).

    For super arms every base arm draws independently and the reward is their sum.
    """
    if isinstance(env, CombEnv):
        subset = _check_subset(env, action)
        draws = uniforms(env.seed, run_key, subset, t)
        per_base = (draws < env.means[subset]).astype(np.float64)
        return SampleOutcome(reward=float(per_base.sum()), per_base_rewards=per_base)

    if isinstance(action, (list, tuple, np.ndarray)) or action is None:
        raise IndexError(f"expected a single arm index, got {action!r}")
    arm = int(action)
    if not 0 <= arm < env.num_arms:
        raise IndexError(f"unknown arm index {arm} (K={env.num_arms})")
    draw = uniform(env.seed, run_key, arm, t)
    return SampleOutcome(reward=1.0 if draw < env.means[arm] else 0.0)


def sample_default(env: Environment) -> float:
    """The default arm's reward: exactly μ₀."""
    return float(env.default_mean)


def optimal_value(env: Environment) -> float:
    """μ_{x*}: the best arm mean, or the best super-arm reward."""
    if isinstance(env, CombEnv):
        return env.optimal_value
    return float(env.means.max())


def action_value(env: Environment, action: Action) -> float:
    """True mean of an action; ``None`` is the default arm."""
    if action is None:
        return float(env.default_mean)
    if isinstance(env, CombEnv):
        return float(env.means[_check_subset(env, action)].sum())
    arm = int(action)
    if not 0 <= arm < env.num_arms:
        raise IndexError(f"unknown arm index {arm} (K={env.num_arms})")
    return float(env.means[arm])


def describe(env: Environment) -> Dict[str, Any]:
    """JSON-ready description of an environment instance."""
    info: Dict[str, Any] = {
        "name": env.name,
        "seed": env.seed,
        "default_mean": float(env.default_mean),
        "optimal_value": optimal_value(env),
        "means": [float(m) for m in env.means],
    }
    if isinstance(env, (LinearEnv, CombEnv)):
        info["theta_star"] = [float(v) for v in env.theta_star]
        info["param_bound"] = env.param_bound
        info["feature_bound"] = env.feature_bound
    if isinstance(env, CombEnv):
        info["cardinality"] = env.cardinality
    return info
