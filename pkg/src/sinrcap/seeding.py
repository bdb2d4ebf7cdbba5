"""Deterministic random-number streams.

Every stream in the package is a pure function of a master seed plus an
integer branch path, so any subset of trials can be reproduced without
replaying the rest of a campaign.
"""

from __future__ import annotations

import numpy as np

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


def as_generator(seed) -> np.random.Generator:
    """Coerce an int, SeedSequence, or Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def derive_rng(master_seed: int, *branch: int) -> np.random.Generator:
    """Generator for the stream (master_seed, *branch).

    Distinct branch tuples give statistically independent streams; equal
    tuples give identical streams regardless of what else has been drawn.
    """
    return np.random.default_rng(np.random.SeedSequence((int(master_seed),) + tuple(int(b) for b in branch)))
