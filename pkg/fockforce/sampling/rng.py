"""
Counter-based random numbers keyed by (seed, shot index).

Shots are grouped in fixed blocks; block b of seed s is drawn from a Philox
generator whose 128-bit key is s + 2^64 b. Shot i is element i % BLOCK of
block i // BLOCK, so any split of the work reproduces the same sequence.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np


logger = logging.getLogger(__name__)

SHOT_BLOCK = 4096

_SEED_LIMIT = 2**64


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Generator for one block of shots."""
    return np.random.Generator(np.random.Philox(key=check_seed(seed) + (block << 64)))


def _block_uniforms(seed: int, block: int) -> np.ndarray:
    return block_generator(seed, block).random(SHOT_BLOCK)


def uniforms(seed: int, shots: int, workers: int = 1) -> np.ndarray:
    """
    The first `shots` uniforms on [0, 1) of the stream for `seed`.

    Args:
        seed: 64-bit unsigned seed
        shots: Number of draws
        workers: Threads used to fill blocks; the output does not depend on it

    Returns:
        Array of length shots
    """
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    n_blocks = -(-shots // SHOT_BLOCK)
    if n_blocks == 0:
        return np.zeros(0)
    if workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda b: _block_uniforms(seed, b), range(n_blocks)))
    else:
        blocks = [_block_uniforms(seed, b) for b in range(n_blocks)]
    logger.debug(f"drew {n_blocks} block(s) of {SHOT_BLOCK} for seed {seed}")
    return np.concatenate(blocks)[:shots]


def derive_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for replication `index` of a run seeded with `seed`."""
    state = np.random.SeedSequence([check_seed(seed), int(index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])
