"""Cross-run envelopes."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class Envelope:
    """Pointwise mean, maximum and minimum over runs."""
    mean: NDArray[np.float64]
    max: NDArray[np.float64]
    min: NDArray[np.float64]

    @property
    def horizon(self) -> int:
        return int(self.mean.shape[0])


def aggregate(curves: Sequence[NDArray[np.float64]]) -> Envelope:
    if len(curves) == 0:
        raise ValueError("cannot aggregate an empty list of curves")
    lengths = {len(c) for c in curves}
    if len(lengths) != 1:
        raise ValueError(f"curves must share one horizon, got lengths {sorted(lengths)}")
    stacked = np.vstack([np.asarray(c, dtype=np.float64) for c in curves])
    return Envelope(mean=stacked.mean(axis=0), max=stacked.max(axis=0), min=stacked.min(axis=0))
