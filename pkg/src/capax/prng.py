"""Deterministic pseudo-random numbers for the randomized verification suites.

A splitmix-style mixer on a 64-bit counter: tiny, seedable, and bit-identical
across platforms and processes, so any failing random case can be replayed
from its seed alone.
"""

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit counter-based generator with a splitmix finalizer."""

    def __init__(self, seed=0):
        self._state = int(seed) & _MASK64

    def next_u64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, lo=0.0, hi=1.0):
        """Uniform float in [lo, hi) built from 53 random bits."""
        u = self.next_u64() >> 11
        return lo + (hi - lo) * (u * 2.0 ** -53)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]

    def spawn(self):
        """Independent child generator (for per-case streams)."""
        return SplitMix64(self.next_u64())
