"""Seeded 64-bit linear congruential generator.

The recurrence is Knuth's MMIX LCG::

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

Uniform doubles take the top 53 bits of the new state. Normals use the
Box-Muller transform on consecutive uniform pairs. The seed is loaded as
``state = seed mod 2**64`` with no scrambling, so any language with
64-bit wrapping arithmetic can reproduce a test corpus bit for bit.
"""

import math

import numpy as np

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed=0):
        self.state = int(seed) & _MASK

    def next_u64(self):
        self.state = (_MULT * self.state + _INC) & _MASK
        return self.state

    def uniform(self, low=0.0, high=1.0, size=None):
        if size is None:
            u = (self.next_u64() >> 11) * (1.0 / (1 << 53))
            return low + (high - low) * u
        n = int(np.prod(size))
        out = np.array([(self.next_u64() >> 11) for _ in range(n)], dtype=float)
        out *= 1.0 / (1 << 53)
        return (low + (high - low) * out).reshape(size)

    def normal(self, size=None):
        n = 1 if size is None else int(np.prod(size))
        vals = []
        while len(vals) < n:
            u1 = self.uniform()
            u2 = self.uniform()
            # u1 = 0 would give log(0)
            r = math.sqrt(-2.0 * math.log(1.0 - u1))
            vals.append(r * math.cos(2 * math.pi * u2))
            vals.append(r * math.sin(2 * math.pi * u2))
        if size is None:
            return vals[0]
        return np.array(vals[:n]).reshape(size)

    def integers(self, low, high):
        """Integer in [low, high)."""
        return low + int(self.uniform() * (high - low))
