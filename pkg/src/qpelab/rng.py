"""Seed plumbing.

Every stochastic component takes an explicit seed and spawns independent streams
through SeedSequence, so results are reproducible bit-for-bit and shots can
run in any order (or in parallel) without sharing state.

Shot streams are keyed as SeedSequence([base_seed, shot_index]) rather than
by arithmetic on the base seed: SeedSequence mixes its entropy words, so
neighbouring shot indices give statistically unrelated streams.
"""

from __future__ import annotations

import numpy as np


def make_generator(seed: int) -> np.random.Generator:
    """Top-level stream for a given base seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def shot_bit_generator(base_seed: int, shot_index: int) -> np.random.PCG64:
    """Independent raw stream for one shot of one circuit."""
    return np.random.PCG64(np.random.SeedSequence([base_seed, shot_index]))


def derive_seed(seed: int, *path: int) -> int:
    """Stable sub-seed for a labelled subtask (circuit index, grid cell, ...)."""
    ss = np.random.SeedSequence([seed, *path])
    return int(ss.generate_state(1, np.uint64)[0])
