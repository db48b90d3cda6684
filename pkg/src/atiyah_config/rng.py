"""Seedable xoshiro256** generator with independent numbered streams.

The platform RNGs are avoided on purpose: the exact bit stream below is
easy to reproduce in any language, so sample corpora can be regenerated
elsewhere.

State initialization: ``x = (seed ^ (stream * 0xD1B54A32D192ED03)) mod 2^64``
is fed through splitmix64 four times to fill the 256-bit state.
Doubles use the top 53 bits; normals use the Box-Muller transform and
consume two doubles per pair of variates.
"""
import math

import numpy as np

MASK = (1 << 64) - 1
_STREAM_MULT = 0xD1B54A32D192ED03


def splitmix64(x):
    """One splitmix64 step; returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return x, z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


class Xoshiro256:
    def __init__(self, seed, stream=0):
        x = (int(seed) ^ (int(stream) * _STREAM_MULT)) & MASK
        s = []
        for _ in range(4):
            x, out = splitmix64(x)
            s.append(out)
        if not any(s):
            s[0] = 1
        self.s = s
        self._spare = None

    def next_u64(self):
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & MASK, 7) * 9) & MASK
        t = (s1 << 17) & MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def random(self):
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low, high, size):
        return np.array([low + (high - low) * self.random() for _ in range(size)])

    def normal(self):
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = 1.0 - self.random()  # in (0, 1]
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def normals(self, size):
        return np.array([self.normal() for _ in range(size)])

    def unit_vector(self):
        while True:
            g = self.normals(3)
            r = float(np.linalg.norm(g))
            if r > 1e-12:
                return g / r

    def integer(self, high):
        """Uniform integer in ``[0, high)`` by rejection."""
        limit = (1 << 64) - ((1 << 64) % high)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % high
