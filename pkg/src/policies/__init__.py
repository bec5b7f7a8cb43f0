"""
Standard Policies
Non-conservative base algorithms wrapped by the conservative gates
"""

from .base import BasePolicy, policy_update
from .linear import (
    C2UCBPolicy,
    LinUCBPolicy,
    c2ucb_choose,
    c2ucb_weights,
    confidence_radius,
    linucb_choose,
    linucb_indices,
    top_k,
)
from .mean_variance import MVUCBPolicy, mvucb_choose, mvucb_indices
from .stats import ArmStats, MVStats, PolicyClock
from .ucb import UCBPolicy, ucb_choose, ucb_indices

__all__ = [
    "ArmStats",
    "BasePolicy",
    "C2UCBPolicy",
    "LinUCBPolicy",
    "MVStats",
    "MVUCBPolicy",
    "PolicyClock",
    "UCBPolicy",
    "c2ucb_choose",
    "c2ucb_weights",
    "confidence_radius",
    "linucb_choose",
    "linucb_indices",
    "mvucb_choose",
    "mvucb_indices",
    "policy_update",
    "top_k",
    "ucb_choose",
    "ucb_indices",
]
