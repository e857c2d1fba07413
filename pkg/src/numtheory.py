"""
Number Theory Module
Shared primitives for every field representation: extended gcd, modular
inverse and exponentiation, primality, factorization and primitive roots.
"""

from dataclasses import dataclass

from errors import DomainError, ZeroDivisionFieldError

# Accumulator widths: 32- and 64-bit integers, 53-bit double mantissa
WORD_BITS = (32, 53, 64)

# Deterministic Miller-Rabin witnesses for every n < 2^64
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def egcd(a, b):
    """
    Extended Euclidean algorithm.

    Args:
        a (int): non-negative integer
        b (int): non-negative integer, not both zero

    Returns:
        tuple: (g, u, v) with g = gcd(a, b) and u*a + v*b = g

    Raises:
        DomainError: if a or b is negative, or both are zero
    """
    if a < 0 or b < 0:
        raise DomainError(f"egcd expects non-negative inputs, got ({a}, {b})")
    if a == 0 and b == 0:
        raise DomainError("egcd(0, 0) is undefined")

    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v

    assert old_u * a + old_v * b == old_r, "Bezout identity violated"
    return old_r, old_u, old_v


def inv_mod(a, p):
    """
    Inverse of a modulo p via the extended gcd.

    Returns:
        int: x with a*x = 1 (mod p) and 0 < x < p

    Raises:
        ZeroDivisionFieldError: if a = 0 (mod p) or gcd(a, p) != 1
    """
    a %= p
    if a == 0:
        raise ZeroDivisionFieldError(f"0 has no inverse modulo {p}")
    g, u, _ = egcd(a, p)
    if g != 1:
        raise ZeroDivisionFieldError(f"{a} is not invertible modulo {p}")
    return u % p


def pow_mod(a, e, n):
    """
    Square-and-multiply exponentiation a^e mod n.

    Raises:
        DomainError: if n = 0 or e < 0
    """
    if n == 0:
        raise DomainError("pow_mod with modulus 0")
    if e < 0:
        raise DomainError(f"pow_mod expects a non-negative exponent, got {e}")
    n = abs(n)
    result = 1 % n
    base = a % n
    while e:
        if e & 1:
            result = result * base % n
        base = base * base % n
        e >>= 1
    return result


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n < 2^64."""
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_WITNESSES:
        x = pow_mod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest prime strictly greater than n."""
    candidate = max(n + 1, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


def prev_prime(n):
    """Largest prime <= n, or None below 2."""
    candidate = n
    while candidate >= 2:
        if is_prime(candidate):
            return candidate
        candidate -= 1
    return None


def factorize(n):
    """
    Prime factors of n with multiplicity, by trial division up to sqrt(n).

    Returns:
        list: ascending primes whose product is n

    Raises:
        DomainError: if n < 2
    """
    if n < 2:
        raise DomainError(f"factorize expects n >= 2, got {n}")
    factors = []
    while n % 2 == 0:
        factors.append(2)
        n //= 2
    d = 3
    while d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 2
    if n > 1:
        factors.append(n)
    return factors


def primitive_root(p):
    """
    Smallest generator of the multiplicative group of Z/pZ.

    g is accepted when g^((p-1)/r) != 1 for every prime r dividing p-1.
    For p = 2 the group is {1} and 1 is returned.

    Raises:
        DomainError: if p is not prime
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return 1

    order = p - 1
    cofactors = [order // r for r in sorted(set(factorize(order)))]
    for g in range(2, p):
        if all(pow_mod(g, c, p) != 1 for c in cofactors):
            return g
    raise DomainError(f"no primitive root found modulo {p}")


@dataclass(frozen=True)
class FieldParams:
    """
    A prime modulus together with the machine word it is computed in.

    Attributes:
        p (int): prime modulus
        m (int): accumulator bit width, one of 32, 53 (double mantissa) or 64
        signed (bool): storage convention of the integer words
    """
    p: int
    m: int = 32
    signed: bool = True

    def __post_init__(self):
        if self.m not in WORD_BITS:
            raise DomainError(f"word width must be one of {WORD_BITS}, got {self.m}")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    @property
    def word_limit(self):
        """First value that no longer fits the accumulator (2^m, or 2^(m-1) signed)."""
        return 1 << (self.m - 1 if self.signed else self.m)


if __name__ == "__main__":
    print("=" * 60)
    print("Number theory primitives")
    print("=" * 60)
    for p in (3, 7, 101, 32749, 40009, 65521):
        print(f"   p={p:>6}  g={primitive_root(p):>3}  p-1={factorize(p - 1)}")
    print(f"   inv_mod(3, 7) = {inv_mod(3, 7)}")
    print(f"   pow_mod(2, 10, 1000) = {pow_mod(2, 10, 1000)}")
