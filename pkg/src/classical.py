"""
Classical Representation Module
Z/pZ with residues stored as machine integers, plus the centered variant and
a machine-remainder baseline used as the benchmark comparison scale.
"""

from collections import Counter
from math import isqrt

from errors import DomainError, FieldBoundError, ZeroDivisionFieldError
from numtheory import FieldParams, inv_mod, prev_prime


def zpz_bound(m, signed=True):
    """
    Largest admissible modulus value for Z/pZ on an m-bit word.

    The intermediate a*x + y of an AXPY must fit the word:
    p <= 2^((m-1)/2) - 1 with signed words, p <= 2^(m/2) - 1 with unsigned ones.
    """
    if m not in (32, 64):
        raise DomainError(f"Z/pZ uses 32- or 64-bit words, got m={m}")
    return isqrt(1 << (m - 1 if signed else m)) - 1


def centered_bound(m):
    """
    Largest admissible modulus for the centered representation: with
    h = (p-1)/2, an AXPY stays within h^2 + h < 2^(m-1).
    """
    if m not in (32, 64):
        raise DomainError(f"centered storage uses 32- or 64-bit words, got m={m}")
    limit = 1 << (m - 1)
    h = isqrt(limit)
    while h * (h + 1) >= limit:
        h -= 1
    return 2 * h + 1


class ZpzField:
    """
    Z/pZ with canonical residues 0 <= a <= p-1.

    Addition and subtraction are one word operation, one comparison and at
    most one correction by p. Multiplication, AXPY and AXPYIN perform exactly
    one machine remainder, counted in `tally['remainders']`.
    """

    name = 'zpz'

    def __init__(self, p, m=32, signed=True):
        """
        Args:
            p (int): prime modulus
            m (int): word width, 32 or 64
            signed (bool): signed or unsigned machine words

        Raises:
            DomainError: if p is not prime or m is unsupported
            FieldBoundError: if p exceeds the bound of the storage convention
        """
        self.params = FieldParams(p, m, signed)
        self.p = p
        self.m = m
        self.signed = signed
        self.bound = zpz_bound(m, signed)
        if p > self.bound:
            kind = 'signed' if signed else 'unsigned'
            raise FieldBoundError(f"{kind} {m}-bit Z/pZ", p, self.bound)
        self.word_limit = self.params.word_limit
        self.tally = Counter()

    def __repr__(self):
        kind = 'signed' if self.signed else 'unsigned'
        return f"{type(self).__name__}(p={self.p}, m={self.m}, {kind})"

    @property
    def max_prime(self):
        return prev_prime(self.bound)

    # -------------------------------------------------------------------------
    # Conversions
    # -------------------------------------------------------------------------

    def encode(self, value):
        return int(value) % self.p

    def decode(self, element):
        return int(element)

    def to_centered(self, a):
        """Map a canonical residue to [-(p-1)/2, (p-1)/2]."""
        self._require_odd()
        return a - self.p if a > (self.p - 1) // 2 else a

    def from_centered(self, c):
        """Map a centered value back to [0, p)."""
        self._require_odd()
        return c + self.p if c < 0 else c

    def _require_odd(self):
        if self.p == 2:
            raise DomainError("the centered representation needs an odd prime")

    # -------------------------------------------------------------------------
    # The seven basic operations
    # -------------------------------------------------------------------------

    def add(self, a, b):
        s = a + b
        if s >= self.p:
            s -= self.p
        return s

    def sub(self, a, b):
        if self.signed:
            d = a - b
            if d < 0:
                d += self.p
            return d
        # unsigned words cannot go below zero: add p before subtracting
        if a >= b:
            return a - b
        return self.p - b + a

    def neg(self, a):
        return 0 if a == 0 else self.p - a

    def mul(self, a, b):
        self.tally['remainders'] += 1
        return (a * b) % self.p

    def inv(self, a):
        return inv_mod(a, self.p)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.p})")
        return self.mul(a, self.inv(b))

    def axpy(self, a, x, y):
        """r <- a*x + y with a single remainder."""
        t = a * x + y
        assert t < self.word_limit, "AXPY overflowed the machine word"
        self.tally['remainders'] += 1
        return t % self.p

    def axpyin(self, r, a, x):
        """r <- a*x + r."""
        return self.axpy(a, x, r)


class CenteredField(ZpzField):
    """
    Z/pZ with residues stored in [-(p-1)/2, (p-1)/2].

    Products are at most ((p-1)/2)^2 in magnitude, which is what lets the
    blocked and overflow kernels double their block length.
    """

    name = 'centered'

    def __init__(self, p, m=32):
        self.params = FieldParams(p, m, True)
        if p == 2:
            raise DomainError("the centered representation needs an odd prime")
        self.p = p
        self.m = m
        self.signed = True
        self.half = (p - 1) // 2
        self.bound = centered_bound(m)
        if p > self.bound:
            raise FieldBoundError(f"centered {m}-bit", p, self.bound)
        self.word_limit = self.params.word_limit
        self.tally = Counter()

    def encode(self, value):
        return self._recenter(int(value) % self.p)

    def decode(self, element):
        return int(element) % self.p

    def _recenter(self, r):
        # r in [0, p)
        return r - self.p if r > self.half else r

    def add(self, a, b):
        s = a + b
        if s > self.half:
            s -= self.p
        elif s < -self.half:
            s += self.p
        return s

    def sub(self, a, b):
        return self.add(a, -b)

    def neg(self, a):
        return -a

    def mul(self, a, b):
        self.tally['remainders'] += 1
        return self._recenter((a * b) % self.p)

    def inv(self, a):
        return self._recenter(inv_mod(a % self.p, self.p))

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.p})")
        return self.mul(a, self.inv(b))

    def axpy(self, a, x, y):
        t = a * x + y
        assert -self.word_limit <= t < self.word_limit, "AXPY overflowed the machine word"
        self.tally['remainders'] += 1
        return self._recenter(t % self.p)


class RemainderField(ZpzField):
    """
    Comparison scale: every operation ends with a machine remainder, even
    where a test and a correction would do.
    """

    name = 'remainder'

    def add(self, a, b):
        self.tally['remainders'] += 1
        return (a + b) % self.p

    def sub(self, a, b):
        self.tally['remainders'] += 1
        return (a - b + self.p) % self.p

    def neg(self, a):
        self.tally['remainders'] += 1
        return (self.p - a) % self.p


if __name__ == "__main__":
    print("=" * 60)
    print("Classical representation bounds")
    print("=" * 60)
    for m in (32, 64):
        for signed in (True, False):
            kind = 'signed' if signed else 'unsigned'
            print(f"   {m}-bit {kind:<8}: p <= {prev_prime(zpz_bound(m, signed))}")
    field = ZpzField(7)
    print(f"   axpy(3, 5, 6) mod 7 = {field.axpy(3, 5, 6)}")
