"""
Exact Reference Arithmetic
Unbounded Python integers for dot products and schoolbook polynomial
arithmetic for GF(p^d). Nothing here calls into the modules it checks.
"""

from itertools import product

from errors import DomainError

ATOMIC_OPS = ('add', 'sub', 'neg', 'mul', 'div', 'axpy', 'axpyin')


def oracle_dot(a, b, p):
    """Exact sum of a_i * b_i, then one Euclidean remainder."""
    if len(a) != len(b):
        raise DomainError(f"vector lengths differ: {len(a)} vs {len(b)}")
    total = 0
    for x, y in zip(a, b):
        total += int(x) * int(y)
    return total % p


def oracle_op(op, p, a, b=0, c=0):
    """
    One atomic operation on canonical residues of GF(p).

    axpy is a*b + c, axpyin is c <- b*c + a with the same argument order as
    the field objects (r, a, x).
    """
    a, b, c = int(a), int(b), int(c)
    if op == 'add':
        return (a + b) % p
    if op == 'sub':
        return (a - b) % p
    if op == 'neg':
        return -a % p
    if op == 'mul':
        return a * b % p
    if op == 'div':
        if b % p == 0:
            raise ZeroDivisionError(f"division by zero modulo {p}")
        return a * pow(b, -1, p) % p
    if op == 'axpy':
        return (a * b + c) % p
    if op == 'axpyin':
        return (b * c + a) % p
    raise DomainError(f"unknown operation {op!r}")


class GFOracle:
    """
    GF(p^d) as coefficient tuples (constant term first) reduced by a monic
    modulus. Integers map to tuples through their base-p digits.
    """

    def __init__(self, p, d, modulus=None):
        self.p = p
        self.d = d
        self.q = p ** d
        if d == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                raise DomainError("an extension oracle needs the modulus polynomial")
            self.modulus = self.from_int(modulus, d + 1)

    def from_int(self, n, width=None):
        width = width or self.d
        coeffs = []
        for _ in range(width):
            coeffs.append(n % self.p)
            n //= self.p
        return tuple(coeffs)

    def to_int(self, poly):
        return sum(c * self.p ** k for k, c in enumerate(poly))

    def elements(self):
        return [tuple(reversed(t)) for t in product(range(self.p), repeat=self.d)]

    def add(self, x, y):
        return tuple((u + v) % self.p for u, v in zip(x, y))

    def neg(self, x):
        return tuple(-u % self.p for u in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        p, d = self.p, self.d
        full = [0] * (2 * d - 1)
        for i in range(d):
            for j in range(d):
                full[i + j] += x[i] * y[j]
        # x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        for k in range(2 * d - 2, d - 1, -1):
            top = full[k] % p
            full[k] = 0
            for t in range(d):
                full[k - d + t] -= top * self.modulus[t]
        return tuple(c % p for c in full[:d])

    def pow(self, x, e):
        result = self.from_int(1)
        for _ in range(e):
            result = self.mul(result, x)
        return result

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("zero has no inverse")
        for y in self.elements():
            if self.mul(x, y) == self.from_int(1):
                return y
        raise DomainError(f"{x} has no inverse; is the modulus irreducible?")

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def table(self, op):
        """q x q table of op over integer-encoded elements (q-vector for neg/inv)."""
        ints = range(self.q)
        if op in ('neg', 'inv'):
            fn = getattr(self, op)
            return {a: self.to_int(fn(self.from_int(a))) for a in ints if op == 'neg' or a}
        fn = getattr(self, op)
        return {(a, b): self.to_int(fn(self.from_int(a), self.from_int(b)))
                for a in ints for b in ints}


def oracle_gf_ops(p, d, modulus=None):
    """Reference arithmetic for GF(p^d) under the given modulus encoding."""
    if p ** d > 10 ** 4:
        raise DomainError(f"GF({p}^{d}) is beyond oracle scale")
    return GFOracle(p, d, modulus)


if __name__ == "__main__":
    print("=" * 60)
    print("Oracle")
    print("=" * 60)
    print(f"   (1,2,3).(4,5,6) mod 7 = {oracle_dot([1, 2, 3], [4, 5, 6], 7)}")
    gf9 = oracle_gf_ops(3, 2, 10)
    print(f"   GF(9) under x^2+1: (x+1)^2 = {gf9.mul((1, 1), (1, 1))}")
