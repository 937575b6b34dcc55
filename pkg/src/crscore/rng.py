"""Counter-based uniform generator.

Value ``n`` (n >= 1) of the stream for ``seed`` is the n-th SplitMix64 output
of a generator seeded with ``seed``; it is computed directly from
``(seed, n)`` so any slice of the stream can be produced independently and in
parallel. The top 53 bits become a double in ``[0, 1)``.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import CRScoreError

MAX_SEED = 2 ** 64 - 1


def check_seed(seed) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed <= MAX_SEED:
        raise CRScoreError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def stream_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Values ``start, start + 1, ..., start + count - 1`` of the stream."""
    seed = check_seed(seed)
    return kernels.uniforms(seed, np.arange(start, start + count, dtype=np.uint64))


class CounterRNG:
    """Sequential view over the counter stream, for small utility draws."""

    def __init__(self, seed: int, position: int = 1):
        self.seed = check_seed(seed)
        self.position = position

    def uniforms(self, count: int) -> np.ndarray:
        out = stream_uniforms(self.seed, self.position, count)
        self.position += count
        return out

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def dirichlet_flat(self, size: int) -> np.ndarray:
        """A draw from the symmetric Dirichlet(1) on ``size`` cells."""
        e = -np.log1p(-self.uniforms(size))
        total = e.sum()
        if total == 0.0:
            return np.full(size, 1.0 / size)
        return e / total
