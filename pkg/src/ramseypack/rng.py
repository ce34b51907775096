"""Seeded random substreams.

Every random draw in the package comes from a Philox (counter-based)
generator keyed by ``(seed, tag, *index)``, so results do not depend on the
order in which independent pieces of work are executed.
"""

from __future__ import annotations

import zlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def tag_key(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


def substream(seed: int, tag: str, *index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed & SEED_MASK, spawn_key=(tag_key(tag), *index))
    return np.random.Generator(np.random.Philox(ss))
