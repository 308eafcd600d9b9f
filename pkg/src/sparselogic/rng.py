"""Seeded random streams.

All randomness in the package flows through numpy's PCG64 generator.  Trial
streams are derived from a user seed with the SplitMix64 finalizer, so that
trial i of a run always sees the same bits whether trials execute serially
or in parallel:

    stream_seed(seed, i) = splitmix64(seed + i * GOLDEN_GAMMA)   (mod 2**64)
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """One round of the SplitMix64 output function."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def stream_seed(seed: int, index: int) -> int:
    """Deterministic per-stream seed for trial `index` of a run seeded `seed`."""
    return splitmix64((seed + index * GOLDEN_GAMMA) & MASK64)


def generator(seed: int, index: int = 0) -> np.random.Generator:
    """PCG64 generator for one trial stream."""
    return np.random.Generator(np.random.PCG64(stream_seed(seed, index)))
