"""
Conservative Gates
Budget gates and the conservative wrappers built on them
"""

from .algorithms import (
    GenCB,
    LCBGated,
    MVCUCB,
    ConservativeAlgorithm,
    StepResult,
    Unconstrained,
    gencb_step,
    mvcucb_step,
)
from .gates import (
    MV_EXPLORATION_SLACK,
    check_mv_precondition,
    gencb_gate,
    lcb_gate,
    lcb_reward_bound,
    mvcucb_gate,
)
from .ledger import BudgetLedger, ConservativeConfig, ConservativeConfigError, MVLedger

__all__ = [
    "BudgetLedger",
    "ConservativeAlgorithm",
    "ConservativeConfig",
    "ConservativeConfigError",
    "GenCB",
    "LCBGated",
    "MVCUCB",
    "MVLedger",
    "MV_EXPLORATION_SLACK",
    "StepResult",
    "Unconstrained",
    "check_mv_precondition",
    "gencb_gate",
    "gencb_step",
    "lcb_gate",
    "lcb_reward_bound",
    "mvcucb_gate",
    "mvcucb_step",
]
