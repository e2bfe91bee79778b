"""Counter-based pseudorandom generator for reproducible campaigns.

Draw i from a stream with key K is mix64(K + (i + 1) * GOLDEN), where
mix64 is the SplitMix64 finalizer; every value is a pure function of
(key, index), so streams can be replayed or split without shared state
and the byte-for-byte output is identical on every platform.  The
platform generators are deliberately not used anywhere campaigns need
reproducibility.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    x &= _MASK
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK
    x ^= x >> 31
    return x


class CounterRng:
    """Splittable stream of 64-bit values indexed by a counter."""

    __slots__ = ("key", "_index")

    def __init__(self, seed: int, _key: int | None = None):
        if _key is not None:
            self.key = _key & _MASK
        else:
            self.key = _mix64((int(seed) & _MASK) ^ 0xA0761D6478BD642F)
        self._index = 0

    def split(self, child: int) -> "CounterRng":
        """Independent child stream; children of distinct ids never collide."""
        return CounterRng(0, _key=_mix64(self.key ^ _mix64((int(child) + 1) * _GOLDEN)))

    def next_u64(self) -> int:
        self._index += 1
        return _mix64(self.key + self._index * _GOLDEN)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_angle(self) -> float:
        return 2.0 * math.pi * self.next_float()

    def next_radius(self, lo: float, hi: float) -> float:
        """Radius distributed so points are area-uniform in the annulus."""
        u = self.next_float()
        return math.sqrt(lo * lo + u * (hi * hi - lo * lo))
