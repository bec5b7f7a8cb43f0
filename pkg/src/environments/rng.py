"""
Counter-based reward randomness.

Every uniform draw is addressed by (env_seed, run_key, arm, t): the Philox key is
(env_seed, run_key) and the counter words carry (block, arm). A draw at any
timestep can be regenerated without replaying the run.
"""

import hashlib
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

BLOCK_SIZE = 4096
_MASK64 = (1 << 64) - 1


def derive_run_key(master_seed: int, run_index: int) -> int:
    """Per-run key: BLAKE2b-64 of ``"{master_seed}:{run_index}"``, little-endian."""
    digest = hashlib.blake2b(f"{master_seed}:{run_index}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@lru_cache(maxsize=2048)
def _uniform_block(env_seed: int, run_key: int, arm: int, block: int) -> NDArray[np.float64]:
    key = np.array([env_seed & _MASK64, run_key & _MASK64], dtype=np.uint64)
    counter = np.array([0, block, arm, 0], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key, counter=counter))
    values = gen.random(BLOCK_SIZE)
    values.setflags(write=False)
    return values


def uniform(env_seed: int, run_key: int, arm: int, t: int) -> float:
    """The uniform in [0, 1) assigned to pulling ``arm`` at timestep ``t`` (t ≥ 1)."""
    if t < 1:
        raise ValueError(f"timestep must be >= 1, got {t}")
    block, offset = divmod(t - 1, BLOCK_SIZE)
    return float(_uniform_block(env_seed, run_key, arm, block)[offset])


def uniforms(env_seed: int, run_key: int, arms: NDArray[np.int64], t: int) -> NDArray[np.float64]:
    """Vector form of :func:`uniform` for the base arms of a super arm."""
    return np.array([uniform(env_seed, run_key, int(a), t) for a in arms], dtype=np.float64)
