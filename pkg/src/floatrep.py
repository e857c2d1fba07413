"""
Floating-Point Representation Module
Residues held in IEEE doubles. Every value is an exact integer below 2^53, and
a remainder is a multiplication by a precomputed 1/p, a floor and at most one
correction by p.
"""

import math
from collections import Counter

import numpy as np

from errors import DomainError, FieldBoundError, ZeroDivisionFieldError
from numtheory import FieldParams, inv_mod, prev_prime

MANTISSA_BITS = 53
MANTISSA_LIMIT = float(1 << MANTISSA_BITS)


def float_bound():
    """Largest p with p*(p-1) < 2^53, i.e. an AXPY stays exact in a double."""
    p = math.isqrt(1 << MANTISSA_BITS) + 1
    while p * (p - 1) >= (1 << MANTISSA_BITS):
        p -= 1
    return p


class FloatField:
    """
    GF(p) over doubles.

    Attributes:
        p (float): the prime, exactly representable
        inv_p (float): nearest double to 1/p
        tally (Counter): 'reductions', plus the 'plus_p' / 'minus_p'
                         corrections fired after the floor
    """

    name = 'float'

    def __init__(self, p):
        self.params = FieldParams(p, MANTISSA_BITS, True)
        self.bound = float_bound()
        if p > self.bound:
            raise FieldBoundError("53-bit float", p, self.bound,
                                  "p(p-1) must stay below 2^53")
        self.m = MANTISSA_BITS
        self.prime = p
        self.p = float(p)
        self.inv_p = 1.0 / self.p
        self.tally = Counter()

    def __repr__(self):
        return f"FloatField(p={self.prime})"

    @property
    def max_prime(self):
        return prev_prime(self.bound)

    # -------------------------------------------------------------------------
    # Reduction
    # -------------------------------------------------------------------------

    def float_reduce(self, T):
        """
        T mod p for an integer-valued double with -p <= T < 2^53.

        The floor of T * inv_p can be one off either way; the sign of what is
        left tells which, and one correction brings it back to [0, p).
        """
        T = float(T)
        if not -self.p <= T < MANTISSA_LIMIT:
            raise DomainError(f"float_reduce input {T} outside [-p, 2^53)")
        self.tally['reductions'] += 1
        T -= math.floor(T * self.inv_p) * self.p
        if T >= self.p:
            self.tally['minus_p'] += 1
            T -= self.p
        elif T < 0:
            self.tally['plus_p'] += 1
            T += self.p
        return T

    def reduce_array(self, T):
        """Vectorized float_reduce over a float64 array (not tallied)."""
        T = np.asarray(T, dtype=np.float64)
        T = T - np.floor(T * self.inv_p) * self.p
        T = np.where(T >= self.p, T - self.p, T)
        return np.where(T < 0, T + self.p, T)

    # -------------------------------------------------------------------------
    # Conversions
    # -------------------------------------------------------------------------

    def encode(self, value):
        return float(int(value) % self.prime)

    def decode(self, element):
        return int(element)

    # -------------------------------------------------------------------------
    # The seven basic operations
    # -------------------------------------------------------------------------

    def add(self, a, b):
        s = a + b
        if s >= self.p:
            s -= self.p
        return s

    def sub(self, a, b):
        d = a - b
        if d < 0:
            d += self.p
        return d

    def neg(self, a):
        return 0.0 if a == 0 else self.p - a

    def mul(self, a, b):
        return self.float_reduce(a * b)

    def inv(self, a):
        return float(inv_mod(int(a), self.prime))

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.prime})")
        return self.mul(a, self.inv(b))

    def float_axpy(self, a, x, y):
        """a*x + y is exact below 2^53, then a single reduction."""
        return self.float_reduce(a * x + y)

    axpy = float_axpy

    def axpyin(self, r, a, x):
        return self.float_axpy(a, x, r)


if __name__ == "__main__":
    print("=" * 60)
    print("Floating-point representation")
    print("=" * 60)
    print(f"   p(p-1) < 2^53: p <= {prev_prime(float_bound())}")
    field = FloatField(32749)
    worst = field.p - 1
    print(f"   axpy(p-1, p-1, p-1) = {field.float_axpy(worst, worst, worst):.0f}")
    print(f"   corrections: {dict(field.tally)}")
