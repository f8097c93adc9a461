"""Seedable PRNG used for position allocation.

The generator is splitmix64: 64 bits of state, one add and two
xor-multiply-shift mixing steps per output (Vigna's public-domain reference
constants).  It is deliberately simple and fully specified so an allocation
can be replayed from its audit record on any node, in any language.
Not cryptographic; key material never comes from here.
"""
from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic stream of 64-bit integers from a 64-bit seed."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, n: int) -> int:
        """Uniform integer in [0, n). Lemire multiply-shift reduction."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64
