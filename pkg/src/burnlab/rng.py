"""Deterministic counter-based pseudo-randomness.

Every stochastic operation in this package draws from one fixed, documented
generator: the splitmix64 finalizer applied to an affine counter,

    out(seed, i) = fin((seed + (i+1) * GOLDEN) mod 2^64)
    fin(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
            z *= 0x94D049BB133111EB; z ^= z>>31   (all mod 2^64)

which is the standard splitmix64 stream started at `seed`.  Being a pure
function of (seed, counter) it is random-access, so bulk consumers evaluate
whole counter ranges in numpy without changing a single output bit; tests
pin scalar == vectorized.  Sub-streams (per-trial seeds, per-cell sweep
seeds) are derived with `mix`, i.e. by reading the parent stream itself.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _fin(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def stream(seed: int, i: int) -> int:
    """i-th 64-bit output of the splitmix64 stream seeded with `seed` (i >= 0)."""
    return _fin((seed + (i + 1) * GOLDEN) & MASK64)


def mix(seed: int, k: int) -> int:
    """Derived sub-seed number k of a master seed (used for trials, sweep cells)."""
    return stream(seed, k)


def stream_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs stream(seed, start..start+count-1) as a uint64 array.

    Bit-identical to the scalar `stream`; evaluated vectorized.
    """
    with np.errstate(over="ignore"):
        idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def u01_block(seed: int, start: int, count: int) -> np.ndarray:
    """Uniform [0,1) doubles for a counter range (top 53 bits / 2^53)."""
    return (stream_block(seed, start, count) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


class Splitmix64:
    """Sequential view of the counter stream, with unbiased bounded draws."""

    __slots__ = ("seed", "i")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.i = 0

    def next_u64(self) -> int:
        v = stream(self.seed, self.i)
        self.i += 1
        return v

    def u01(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection; no modulo bias."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        # largest multiple of n that fits in 64 bits
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n
