"""Seeded random streams.

Every random draw in the package comes from a Philox generator (counter
based) keyed by a root seed and a path of non-negative integers, built with
:class:`numpy.random.SeedSequence`. Two draws with the same ``(seed, *path)``
are bit-identical on every platform; distinct paths give independent streams.
"""

from __future__ import annotations

import zlib

import numpy as np


def label(name: str) -> int:
    """Stable integer key for a textual stream label."""
    return zlib.crc32(name.encode("utf-8"))


def stream(seed: int, *path: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in path))
    return np.random.Generator(np.random.Philox(seq))


def field_vector(rng: np.random.Generator, p: int, size: int) -> list[int]:
    """Uniform vector of residues in [0, p)."""
    return [int(v) for v in rng.integers(0, p, size=size, dtype=np.int64)]


def nonzero_field_vector(rng: np.random.Generator, p: int, size: int) -> list[int]:
    return [int(v) for v in rng.integers(1, p, size=size, dtype=np.int64)]


def derive_seed(seed: int, *path: int) -> int:
    """Child seed for the stream at ``path`` (used to hand seeds to sub-runs)."""
    return int(stream(seed, *path).integers(0, 2**62, dtype=np.int64))
