"""
Montgomery Representation Module
Elements are stored as aB mod p with B half the machine word, so that every
remainder by p becomes a Montgomery reduction: masks, shifts and two
multiplications.
"""

from collections import Counter
from math import isqrt

from errors import DomainError, FieldBoundError, ZeroDivisionFieldError
from numtheory import FieldParams, inv_mod, prev_prime


def montgomery_bound(m):
    """
    Largest p with (p-1)^2 + p*(B-1) < B^2 for B = 2^(m/2).

    This is what a single reduction of a product plus a correction needs;
    for B = 2^16 the largest such prime is 40499.
    """
    if m not in (32, 64):
        raise DomainError(f"Montgomery uses 32- or 64-bit words, got m={m}")
    B = 1 << (m // 2)
    # p^2 + p*(B-3) + 1 - B^2 < 0
    disc = (B - 3) ** 2 + 4 * (B * B - 1)
    p = (isqrt(disc) - (B - 3)) // 2
    while (p - 1) ** 2 + p * (B - 1) >= B * B:
        p -= 1
    while p * p + (p + 1) * (B - 1) < B * B:
        p += 1
    return p


class MontgomeryContext:
    """
    Montgomery arithmetic modulo an odd prime p with radix B = 2^(m/2).

    Attributes:
        p (int): odd prime modulus
        B (int): radix, 2^16 for 32-bit words and 2^32 for 64-bit words
        n_im (int): -p^(-1) mod B
        mask (int): B - 1, replaces every remainder by B
        shift (int): log2(B), replaces every division by B
        tally (Counter): 'redc' counts Montgomery reductions,
                         'conversions' counts to_mont remainders
    """

    name = 'montgomery'

    def __init__(self, p, m=32):
        self.params = FieldParams(p, m, False)
        if m not in (32, 64):
            raise DomainError(f"Montgomery uses 32- or 64-bit words, got m={m}")
        if p % 2 == 0:
            raise DomainError("Montgomery reduction needs an odd modulus")

        self.p = p
        self.m = m
        self.shift = m // 2
        self.B = 1 << self.shift
        self.mask = self.B - 1
        self.bound = montgomery_bound(m)
        if (p - 1) ** 2 + p * (self.B - 1) >= self.B * self.B:
            raise FieldBoundError(
                f"Montgomery B=2^{self.shift}", p, self.bound,
                "(p-1)^2 + p(B-1) must stay below B^2",
            )

        self.n_im = (-inv_mod(p, self.B)) % self.B
        assert (self.n_im * p) & self.mask == self.mask, "n_im is not -p^-1 mod B"
        self.tally = Counter()

    def __repr__(self):
        return f"MontgomeryContext(p={self.p}, B=2^{self.shift}, n_im={self.n_im})"

    @property
    def max_prime(self):
        return prev_prime(self.bound)

    # -------------------------------------------------------------------------
    # Reduction and conversions
    # -------------------------------------------------------------------------

    def redc(self, T):
        """
        T * B^(-1) mod p for 0 <= T <= p*B, canonical output in [0, p).

        U = T * n_im mod B makes T + U*p divisible by B; the quotient is
        below 2p, so one conditional subtraction finishes the job.
        """
        assert 0 <= T <= self.p * self.B, f"redc input {T} outside [0, pB]"
        self.tally['redc'] += 1
        U = ((T & self.mask) * self.n_im) & self.mask
        t = (T + U * self.p) >> self.shift
        if t >= self.p:
            t -= self.p
        return t

    def to_mont(self, a):
        """a -> aB mod p."""
        self.tally['conversions'] += 1
        return (int(a) << self.shift) % self.p

    def from_mont(self, x):
        """aB mod p -> a."""
        return self.redc(int(x))

    encode = to_mont
    decode = from_mont

    # -------------------------------------------------------------------------
    # The seven basic operations, on aB-coded values
    # -------------------------------------------------------------------------

    def add(self, a, b):
        s = a + b
        if s >= self.p:
            s -= self.p
        return s

    def sub(self, a, b):
        if a >= b:
            return a - b
        return self.p - b + a

    def neg(self, a):
        return 0 if a == 0 else self.p - a

    def mont_mul(self, a, b):
        """aB * bB = abB^2, one reduction gives abB."""
        return self.redc(a * b)

    mul = mont_mul

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionFieldError(f"0 has no inverse modulo {self.p}")
        return self.to_mont(inv_mod(self.from_mont(a), self.p))

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.p})")
        return self.mont_mul(a, self.inv(b))

    def mont_axpy(self, a, x, y):
        """
        a*x + y on coded values: axB^2 cannot meet yB directly, so the
        product is reduced first and y added after.
        """
        s = self.redc(a * x) + y
        if s >= self.p:
            s -= self.p
        return s

    axpy = mont_axpy

    def axpyin(self, r, a, x):
        return self.mont_axpy(a, x, r)


if __name__ == "__main__":
    print("=" * 60)
    print("Montgomery representation")
    print("=" * 60)
    for m in (32, 64):
        print(f"   B=2^{m // 2}: p <= {prev_prime(montgomery_bound(m))}")
    ctx = MontgomeryContext(7)
    print(f"   {ctx}")
    print(f"   to_mont(3) = {ctx.to_mont(3)}, redc(6) = {ctx.redc(6)}")
