"""
Linear Algebra Core
Incremental ridge regression state used by the linear and combinatorial policies
"""

from .ridge import (
    RidgeError,
    RidgeState,
    mahalanobis_inverse_norm,
    mahalanobis_inverse_norms,
    ridge_init,
    ridge_update,
)

__all__ = [
    "RidgeError",
    "RidgeState",
    "mahalanobis_inverse_norm",
    "mahalanobis_inverse_norms",
    "ridge_init",
    "ridge_update",
]
