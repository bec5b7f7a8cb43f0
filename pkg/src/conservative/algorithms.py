"""
Conservative Algorithms

GenCB wraps any base policy with the budget gate; MV-CUCB wraps MV-UCB with the
mean-variance gate; ``LCBGated`` is the lower-confidence-bound baseline and
``Unconstrained`` runs a base policy with no gate at all.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from ..environments import Action, Environment, SampleOutcome, sample, sample_default
from ..policies import BasePolicy, MVUCBPolicy, UCBPolicy, policy_update
from .gates import check_mv_precondition, gencb_gate, lcb_gate, mvcucb_gate
from .ledger import BudgetLedger, ConservativeConfig, MVLedger

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepResult:
    action: Action
    reward: float
    is_default: bool
    outcome: Optional[SampleOutcome] = None


class ConservativeAlgorithm(ABC):
    """A learner that plays either its base policy or the default arm each step."""

    name: str = "algorithm"

    def __init__(self, policy: BasePolicy, config: ConservativeConfig):
        self.policy = policy
        self.config = config
        self.ledger = BudgetLedger()

    @abstractmethod
    def step(self, env: Environment, run_key: int = 0) -> StepResult:
        """Play timestep ``ledger.t + 1``."""

    def _play_regular(self, env: Environment, run_key: int) -> StepResult:
        t_next = self.ledger.t + 1
        action = self.policy.choose()
        outcome = sample(env, action, t_next, run_key)
        policy_update(self.policy, action, outcome)
        self.ledger.record_regular(outcome.reward, self.config.reward_cap)
        return StepResult(action=action, reward=outcome.reward, is_default=False, outcome=outcome)

    def _play_default(self, env: Environment) -> StepResult:
        reward = sample_default(env)
        self.ledger.record_default()
        return StepResult(action=None, reward=reward, is_default=True)


def gencb_step(wrapper: "GenCB", env: Environment, run_key: int = 0) -> StepResult:
    """One GenCB step: regular pull through the base policy when the gate allows it."""
    if gencb_gate(wrapper.ledger, wrapper.config):
        return wrapper._play_regular(env, run_key)
    return wrapper._play_default(env)


class GenCB(ConservativeAlgorithm):
    name = "gencb"

    def step(self, env: Environment, run_key: int = 0) -> StepResult:
        return gencb_step(self, env, run_key)


class LCBGated(ConservativeAlgorithm):
    """UCB whose constraint check replaces r_S with a sum of lower confidence bounds."""

    name = "lcb_gate"

    def __init__(self, policy: UCBPolicy, config: ConservativeConfig):
        if not isinstance(policy, UCBPolicy):
            raise TypeError("the LCB gate is defined for the K-armed UCB policy only")
        super().__init__(policy, config)
        self.dominance_breaks = 0

    def step(self, env: Environment, run_key: int = 0) -> StepResult:
        lcb_open = lcb_gate(self.policy.stats, self.ledger, self.config)
        if lcb_open and not gencb_gate(self.ledger, self.config):
            self.dominance_breaks += 1
            logger.error("LCB gate open while the reward gate is closed at t=%d", self.ledger.t + 1)
        if lcb_open:
            return self._play_regular(env, run_key)
        return self._play_default(env)


class Unconstrained(ConservativeAlgorithm):
    """The bare base policy; used as the negative control for the audits."""

    name = "base"

    def step(self, env: Environment, run_key: int = 0) -> StepResult:
        return self._play_regular(env, run_key)


def mvcucb_step(state: "MVCUCB", env: Environment, run_key: int = 0) -> StepResult:
    """One MV-CUCB step; both branches feed the trajectory ledger."""
    if mvcucb_gate(state.mv_ledger, state.config, state.rho):
        result = state._play_regular(env, run_key)
    else:
        result = state._play_default(env)
    state.mv_ledger.record(result.reward, result.is_default)
    return result


class MVCUCB(ConservativeAlgorithm):
    """Conservative mean-variance UCB.

    The safety guarantee needs α·ρ·μ₀ > 2; construction fails otherwise unless
    ``unsafe`` is set, in which case ``precondition_holds`` is False.
    """

    name = "mvcucb"

    def __init__(self, policy: MVUCBPolicy, config: ConservativeConfig, unsafe: bool = False):
        if not isinstance(policy, MVUCBPolicy):
            raise TypeError("MV-CUCB wraps the MV-UCB policy")
        super().__init__(policy, config)
        self.rho = policy.stats.rho
        self.precondition_holds = check_mv_precondition(config, self.rho, unsafe=unsafe)
        if not self.precondition_holds:
            logger.warning("alpha*rho*mu0 = %.4g <= 2: mean-variance constraint is not guaranteed",
                           config.alpha * self.rho * config.mu0)
        self.mv_ledger = MVLedger()

    def step(self, env: Environment, run_key: int = 0) -> StepResult:
        return mvcucb_step(self, env, run_key)
