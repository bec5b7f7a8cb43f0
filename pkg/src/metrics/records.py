"""Per-run traces."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..environments import Action

DEFAULT_ACTION = -1


@dataclass(eq=False)
class RunRecord:
    """Trace of one simulation run.

    ``actions`` has shape (T,) for single arms and (T, cardinality) for super
    arms; default pulls are stored as ``DEFAULT_ACTION`` in every column.
    """
    actions: NDArray[np.int64]
    rewards: NDArray[np.float64]
    is_default: NDArray[np.bool_]
    setting: str = ""
    algorithm: str = ""
    env_name: str = ""
    run_index: int = 0
    run_key: int = 0

    def __post_init__(self):
        self.actions = np.asarray(self.actions, dtype=np.int64)
        self.rewards = np.asarray(self.rewards, dtype=np.float64)
        self.is_default = np.asarray(self.is_default, dtype=bool)
        n = self.rewards.shape[0]
        if self.actions.shape[0] != n or self.is_default.shape[0] != n:
            raise ValueError("actions, rewards and is_default must share the horizon length")

    @property
    def horizon(self) -> int:
        return int(self.rewards.shape[0])

    @property
    def is_combinatorial(self) -> bool:
        return self.actions.ndim == 2

    def action_at(self, index: int) -> Action:
        """Action at 0-based position ``index``; None for the default arm."""
        if self.is_default[index]:
            return None
        if self.is_combinatorial:
            return self.actions[index].copy()
        return int(self.actions[index])

    def default_counts(self) -> NDArray[np.int64]:
        """N₀ after each step."""
        return np.cumsum(self.is_default, dtype=np.int64)

    def cumulative_rewards(self) -> NDArray[np.float64]:
        return np.cumsum(self.rewards)


@dataclass
class RecordBuilder:
    """Preallocated arrays filled step by step during a simulation."""
    horizon: int
    cardinality: Optional[int] = None
    _cursor: int = field(default=0, init=False)

    def __post_init__(self):
        shape = (self.horizon,) if self.cardinality is None else (self.horizon, self.cardinality)
        self.actions = np.full(shape, DEFAULT_ACTION, dtype=np.int64)
        self.rewards = np.zeros(self.horizon, dtype=np.float64)
        self.is_default = np.zeros(self.horizon, dtype=bool)

    def append(self, action: Action, reward: float, is_default: bool) -> None:
        i = self._cursor
        if not is_default:
            self.actions[i] = action
        self.rewards[i] = reward
        self.is_default[i] = is_default
        self._cursor += 1

    def build(self, **identity) -> RunRecord:
        if self._cursor != self.horizon:
            raise ValueError(f"record holds {self._cursor} steps, expected {self.horizon}")
        return RunRecord(actions=self.actions, rewards=self.rewards, is_default=self.is_default, **identity)
