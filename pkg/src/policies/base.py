"""Common interface of the non-conservative base policies."""

from abc import ABC, abstractmethod

from ..environments import Action, SampleOutcome
from .stats import PolicyClock


class BasePolicy(ABC):
    """A standard bandit algorithm running on its own clock m.

    ``choose`` advances the clock before selecting, so m ≥ 1 whenever an
    index is evaluated.
    """

    name: str = "base"

    def __init__(self):
        self.clock = PolicyClock()

    @abstractmethod
    def choose(self) -> Action:
        """Tick the clock and return the next regular action."""

    @abstractmethod
    def update(self, action: Action, outcome: SampleOutcome) -> None:
        """Fold the observed outcome of ``action`` into the statistics."""


def policy_update(policy: BasePolicy, action: Action, outcome: SampleOutcome) -> BasePolicy:
    """Update ``policy`` with the outcome of the action it last chose."""
    policy.update(action, outcome)
    return policy
