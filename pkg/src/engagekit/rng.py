"""Deterministic random number generation.

Every stochastic routine in this package (synthetic data, splits, session
and timeline simulation) draws from a PCG64 generator built here. PCG64 is
fully specified by its published recurrence, so a given 64-bit seed yields
the same stream on every platform and every numpy release that ships it.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    """Return a fresh PCG64-backed generator for a 64-bit unsigned seed."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be in [0, 2**64 - 1], got {seed}")
    return np.random.Generator(np.random.PCG64(seed))
