"""Portable seeded uniform generator (xorshift64*).

The state is seeded from a 64-bit integer via one SplitMix64 step
(increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB, shifts 30/27/31); a zero result is replaced by the
increment constant since xorshift must not start at zero.

Each draw applies ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` and outputs
``x * 0x2545F4914F6CDD1D mod 2^64`` (Vigna, "An experimental exploration of
Marsaglia's xorshift generators, scrambled", 2016). The top 53 bits give a
double in [0, 1). Pure integer arithmetic, so the stream is identical on
every platform.
"""
import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_STAR = 0x2545F4914F6CDD1D


def splitmix64(seed):
    z = (int(seed) + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed=42):
        self.state = splitmix64(seed) or _GOLDEN

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _STAR) & _MASK

    def uniform(self, size):
        """``size`` doubles in [0, 1), as a float64 array."""
        x = self.state
        out = [0] * int(size)
        # Inlined next_u64; this loop dominates random tensor generation.
        for i in range(len(out)):
            x ^= x >> 12
            x ^= (x << 25) & _MASK
            x ^= x >> 27
            out[i] = ((x * _STAR) & _MASK) >> 11
        self.state = x
        return np.array(out, dtype=np.float64) * (1.0 / (1 << 53))
