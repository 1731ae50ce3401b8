"""Counter-based uniforms: one value per (seed, stream, simplex).

Each simplex gets its own uniform number by hashing its labels with
SplitMix64 finalisers keyed by the seed.  Nothing is consumed from a shared
stream, so a simplex's draw does not depend on which other simplexes were
visited (pruned simplexes implicitly "consume" their draw), and raising a
probability can only add simplexes to a sample built from the same seed.

The scalar and the numpy implementations return bit-identical values.
"""

from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

SAMPLE_STREAM = 0
SELECT_STREAM = 1
PARAM_STREAM = 2


def splitmix64(x: int) -> int:
    z = (x + _GAMMA) & MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def _start(seed: int, stream: int, size: int) -> int:
    return splitmix64((seed & MASK) ^ splitmix64((stream << 8) + size))


def simplex_hash(seed: int, sigma, stream: int = SAMPLE_STREAM) -> int:
    h = _start(seed, stream, len(sigma))
    for a in sigma:
        if a <= MASK:
            h = splitmix64(h ^ a)
        else:
            # oversized labels are folded in 64-bit chunks, prefixed by their count
            chunks = []
            while a:
                chunks.append(a & MASK)
                a >>= 64
            h = splitmix64(h ^ (len(chunks) << 56))
            for c in chunks:
                h = splitmix64(h ^ c)
    return h


def simplex_uniform(seed: int, sigma, stream: int = SAMPLE_STREAM) -> float:
    """Uniform value in [0, 1) attached to ``sigma``."""
    return (simplex_hash(seed, sigma, stream) >> 11) * 2.0**-53


def _splitmix_np(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def vertex_uniforms(seed: int, labels, stream: int = SAMPLE_STREAM) -> np.ndarray:
    """Vectorised ``simplex_uniform(seed, (v,), stream)`` for labels below 2**64."""
    labels = np.asarray(labels, dtype=np.uint64)
    h0 = np.uint64(_start(seed, stream, 1))
    with np.errstate(over="ignore"):
        h = _splitmix_np(h0 ^ labels)
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53
