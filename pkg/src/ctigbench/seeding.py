"""Deterministic seed derivation.

All randomness in the package flows from a single master seed.  Children
are derived with explicit spawn keys, so each purpose (triggers, negatives,
shuffles, ...) is independently reproducible and insensitive to evaluation
order or parallel scheduling.
"""

from __future__ import annotations

import numpy as np

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


def child_seq(seed, *path: int) -> np.random.SeedSequence:
    """Derive a child SeedSequence for `seed` at the given spawn path.

    Composes: ``child_seq(child_seq(s, a), b) == child_seq(s, a, b)``.
    """
    if isinstance(seed, np.random.SeedSequence):
        entropy = seed.entropy
        base = tuple(seed.spawn_key)
    else:
        entropy = int(seed)
        base = ()
    return np.random.SeedSequence(entropy, spawn_key=base + tuple(int(p) for p in path))


def as_generator(seed) -> np.random.Generator:
    """Coerce an int, SeedSequence, or Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
