"""Deterministic pseudo-random primitives for reproducible workload generation.

The generator is splitmix64 (Steele, Lea & Flood's 64-bit mixer), chosen over
the platform default so that identical seeds give byte-identical workloads on
any platform. Bounded integers are drawn by modulo reduction of the raw
64-bit output; the bias is negligible for the small bounds used here and the
scheme is trivially portable.
"""

from __future__ import annotations

import bisect

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit splitmix generator with a 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def next_int(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_below(hi - lo + 1)

    def next_float(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for stream ``index``; one splitmix64 step of
    ``seed + index * golden_gamma``."""
    return SplitMix64((seed + index * _GOLDEN) & _MASK64).next_u64()


class ZipfSampler:
    """Inverse-CDF sampler over ranks 0..n-1 with weight (rank+1)**-s.

    Rank 0 is the most popular item; s = 0 degenerates to uniform.
    """

    def __init__(self, n: int, s: float):
        if n < 1:
            raise ValueError("need at least one item")
        if s < 0:
            raise ValueError("skew must be non-negative")
        self.n = n
        self.s = s
        cum: list[float] = []
        total = 0.0
        for rank in range(1, n + 1):
            total += rank**-s
            cum.append(total)
        self._cum = cum
        self._total = total

    def sample(self, rng: SplitMix64) -> int:
        u = rng.next_float() * self._total
        idx = bisect.bisect_right(self._cum, u)
        return min(idx, self.n - 1)
