"""
Ridge Regression State

Holds the design matrix V_t = λI + Σ x xᵀ, the response b_t = Σ r x and the
estimate θ̂_t = V_t⁻¹ b_t. The estimate is re-solved from a fresh Cholesky
factorization after every update; no rank-one inverse is maintained.
"""

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import cho_factor, cho_solve, solve_triangular, LinAlgError

# Relative floor for the squared Cholesky pivots of V_t.
PIVOT_TOLERANCE = 1e-12


class RidgeError(ValueError):
    """Raised for invalid ridge parameters or a degenerate design matrix."""


@dataclass(frozen=True)
class RidgeState:
    """Value-type snapshot of an incremental ridge regression."""
    dim: int
    lam: float
    gram: NDArray[np.float64]
    response: NDArray[np.float64]
    estimate: NDArray[np.float64]
    feature_bound: float
    param_bound: float
    # Lower Cholesky factor of gram, kept for the V⁻¹-norm queries.
    chol: NDArray[np.float64] = field(repr=False)


def ridge_init(dim: int, lam: float, feature_bound: float, param_bound: float) -> RidgeState:
    """Create the initial state V = λI, b = 0, θ̂ = 0.

    Raises:
        RidgeError: if dim < 1, a bound is not positive, or λ < max(1, L²).
    """
    if dim < 1:
        raise RidgeError(f"dimension must be a positive integer, got {dim}")
    if feature_bound <= 0 or param_bound <= 0:
        raise RidgeError(
            f"feature_bound and param_bound must be positive, got L={feature_bound}, S={param_bound}"
        )
    required = max(1.0, feature_bound ** 2)
    if lam < required:
        raise RidgeError(f"lambda must satisfy lambda >= max(1, L^2) = {required}, got {lam}")

    eye = np.eye(dim, dtype=np.float64)
    return RidgeState(
        dim=dim,
        lam=float(lam),
        gram=lam * eye,
        response=np.zeros(dim, dtype=np.float64),
        estimate=np.zeros(dim, dtype=np.float64),
        feature_bound=float(feature_bound),
        param_bound=float(param_bound),
        chol=np.sqrt(lam) * eye,
    )


def _factorize(gram: NDArray[np.float64], lam: float) -> NDArray[np.float64]:
    """Lower Cholesky factor of gram, rejecting near-singular pivots."""
    try:
        factor, _ = cho_factor(gram, lower=True, check_finite=False)
    except LinAlgError as e:
        raise RidgeError(f"design matrix is not positive definite: {e}") from e
    lower = np.tril(factor)
    pivots = np.diag(lower) ** 2
    if np.any(pivots < PIVOT_TOLERANCE * lam):
        raise RidgeError(f"Cholesky pivot below {PIVOT_TOLERANCE} * lambda: min pivot {pivots.min():.3e}")
    return lower


def ridge_update(state: RidgeState, feature: Sequence[float], reward: float) -> RidgeState:
    """Fold one (x, r) observation into a new state.

    The outer product x xᵀ is bitwise symmetric, so adding it to both triangles
    keeps gram exactly symmetric.
    """
    x = np.asarray(feature, dtype=np.float64).reshape(-1)
    if x.shape[0] != state.dim:
        raise RidgeError(f"feature has dimension {x.shape[0]}, expected {state.dim}")
    norm = float(np.linalg.norm(x))
    if norm > state.feature_bound * (1.0 + 1e-12):
        raise RidgeError(f"feature norm {norm:.6g} exceeds feature_bound {state.feature_bound}")
    if not np.any(x):
        return state

    gram = state.gram + np.outer(x, x)
    response = state.response + float(reward) * x
    lower = _factorize(gram, state.lam)
    estimate = cho_solve((lower, True), response, check_finite=False)
    return replace(state, gram=gram, response=response, estimate=estimate, chol=lower)


def mahalanobis_inverse_norm(state: RidgeState, feature: Sequence[float]) -> float:
    """Return ‖x‖_{V⁻¹} = √(xᵀ V⁻¹ x)."""
    x = np.asarray(feature, dtype=np.float64).reshape(-1)
    if not np.any(x):
        return 0.0
    y = solve_triangular(state.chol, x, lower=True, check_finite=False)
    return float(np.sqrt(y @ y))


def mahalanobis_inverse_norms(state: RidgeState, features: NDArray[np.float64]) -> NDArray[np.float64]:
    """Row-wise ‖x‖_{V⁻¹} for a (n, d) matrix of features."""
    rows = np.asarray(features, dtype=np.float64)
    y = solve_triangular(state.chol, rows.T, lower=True, check_finite=False)
    return np.sqrt(np.einsum("ij,ij->j", y, y))
