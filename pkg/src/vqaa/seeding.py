"""Reproducible random streams.

Every trial gets its own generator derived from ``(master_seed, trial_index)``
through numpy's ``SeedSequence``, so results do not depend on scheduling.
"""
from __future__ import annotations

import numpy as np


def trial_rng(master_seed: int, trial_index: int = 0, *extra: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(trial_index), *map(int, extra)]))


def as_rng(rng) -> np.random.Generator:
    """Accept a Generator, an int seed or None."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
