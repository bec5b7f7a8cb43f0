"""
Linear Index Policies

LinUCB over a finite arm list and C2UCB over base arms with a top-k oracle.
Both maximize xᵀθ over the confidence ellipsoid
{θ : ‖θ − θ̂‖_V ≤ β_m}, which for a finite set reduces to the index
xᵀθ̂ + β_m ‖x‖_{V⁻¹}.
"""

import math

import numpy as np
from numpy.typing import NDArray

from ..environments import SampleOutcome
from ..linalg import RidgeState, mahalanobis_inverse_norms, ridge_init, ridge_update
from .base import BasePolicy
from .stats import PolicyClock


def confidence_radius(dim: int, m: int, lam: float, feature_bound: float,
                      param_bound: float, scale: float = 1.0) -> float:
    """β_m = √(d ln(2m²(1 + m·scale·L²/λ))) + √λ·S.

    ``scale`` is 1 for LinUCB and the number of base arms K for C2UCB.
    """
    m = max(m, 1)
    inner = 2.0 * m * m * (1.0 + m * scale * feature_bound ** 2 / lam)
    return math.sqrt(dim * math.log(inner)) + math.sqrt(lam) * param_bound


def linucb_indices(ridge: RidgeState, arms: NDArray[np.float64], m: int) -> NDArray[np.float64]:
    beta = confidence_radius(ridge.dim, m, ridge.lam, ridge.feature_bound, ridge.param_bound)
    return arms @ ridge.estimate + beta * mahalanobis_inverse_norms(ridge, arms)


def linucb_choose(ridge: RidgeState, arms: NDArray[np.float64], clock: PolicyClock) -> int:
    """Optimistic arm over the confidence ellipsoid; lowest index wins ties."""
    return int(np.argmax(linucb_indices(ridge, arms, clock.m)))


def c2ucb_weights(ridge: RidgeState, base_arms: NDArray[np.float64], m: int) -> NDArray[np.float64]:
    """Upper confidence bounds w̄_e of every base-arm weight."""
    beta = confidence_radius(ridge.dim, m, ridge.lam, ridge.feature_bound, ridge.param_bound,
                             scale=float(base_arms.shape[0]))
    return base_arms @ ridge.estimate + beta * mahalanobis_inverse_norms(ridge, base_arms)


def top_k(weights: NDArray[np.float64], k: int) -> NDArray[np.int64]:
    """Indices of the k largest weights, ties to the lowest index, returned sorted."""
    order = np.argsort(-weights, kind="stable")
    return np.sort(order[:k]).astype(np.int64)


def c2ucb_choose(ridge: RidgeState, base_arms: NDArray[np.float64], cardinality: int,
                 clock: PolicyClock) -> NDArray[np.int64]:
    """Exact oracle for f(A, w̄) = Σ_{e∈A} w̄_e: the top-``cardinality`` base arms."""
    if not 1 <= cardinality <= base_arms.shape[0]:
        raise ValueError(f"cardinality must lie in [1, {base_arms.shape[0]}], got {cardinality}")
    return top_k(c2ucb_weights(ridge, base_arms, clock.m), cardinality)


class LinUCBPolicy(BasePolicy):
    name = "linucb"

    def __init__(self, arms: NDArray[np.float64], lam: float, feature_bound: float, param_bound: float):
        super().__init__()
        self.arms = np.asarray(arms, dtype=np.float64)
        self.ridge = ridge_init(self.arms.shape[1], lam, feature_bound, param_bound)

    def choose(self) -> int:
        self.clock.tick()
        return linucb_choose(self.ridge, self.arms, self.clock)

    def update(self, action: int, outcome: SampleOutcome) -> None:
        self.ridge = ridge_update(self.ridge, self.arms[int(action)], outcome.reward)


class C2UCBPolicy(BasePolicy):
    name = "c2ucb"

    def __init__(self, base_arms: NDArray[np.float64], cardinality: int, lam: float,
                 feature_bound: float, param_bound: float):
        super().__init__()
        self.base_arms = np.asarray(base_arms, dtype=np.float64)
        self.cardinality = cardinality
        self.ridge = ridge_init(self.base_arms.shape[1], lam, feature_bound, param_bound)

    def choose(self) -> NDArray[np.int64]:
        self.clock.tick()
        return c2ucb_choose(self.ridge, self.base_arms, self.cardinality, self.clock)

    def update(self, action: NDArray[np.int64], outcome: SampleOutcome) -> None:
        # Semi-bandit feedback: one ridge observation per base arm in the super arm.
        if outcome.per_base_rewards is None:
            raise ValueError("C2UCB requires per-base-arm rewards")
        for e, w in zip(np.asarray(action).reshape(-1), outcome.per_base_rewards):
            self.ridge = ridge_update(self.ridge, self.base_arms[int(e)], float(w))
