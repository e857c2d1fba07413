"""
Dot Product Kernels
Naive, delayed, blocked, overflow-on-demand, centered overflow and hybrid
block-overflow dot products, over the classical, centered, Montgomery and
floating-point representations.

Integer block sums are numpy dots in the accumulator dtype; the block
length keeps them from wrapping. Deliberate wraparound (the overflow
kernels) is done on Python ints with an explicit mask.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from classical import centered_bound, zpz_bound
from errors import DomainError, FieldBoundError, KernelPreconditionError
from floatrep import MANTISSA_BITS, FloatField, float_bound
from montgomery import MontgomeryContext, montgomery_bound
from numtheory import FieldParams

# kind -> representations it accepts
ADMITTED = {
    'delayed': ('zpz', 'float'),
    'blocked': ('zpz', 'centered', 'float'),
    'overflow': ('zpz',),
    'overflow-centered': ('centered',),
    'hybrid': ('zpz',),
    'montgomery-blocked': ('montgomery',),
    'overflow-montgomery': ('montgomery',),
    'hybrid-montgomery': ('montgomery',),
}

UNSIGNED_OVERFLOW_KINDS = ('overflow', 'hybrid', 'overflow-montgomery', 'hybrid-montgomery')

ACCUMULATOR_DTYPES = {
    ('zpz', 32): np.uint32,
    ('zpz', 64): np.uint64,
    ('centered', 32): np.int32,
    ('centered', 64): np.int64,
    ('montgomery', 32): np.uint32,
    ('montgomery', 64): np.uint64,
    ('float', MANTISSA_BITS): np.float64,
}


# =============================================================================
# Block lengths
# =============================================================================

def delayed_block(p, m):
    """Largest K >= 1 with K (p-1)^2 < 2^m."""
    return max(1, ((1 << m) - 1) // ((p - 1) ** 2 or 1))


def centered_block(p, m):
    """Largest K >= 1 with K ((p-1)/2)^2 < 2^(m-1)."""
    h = (p - 1) // 2
    if h == 0:
        raise DomainError("the centered representation needs an odd prime")
    return max(1, ((1 << (m - 1)) - 1) // (h * h))


def hybrid_block(p, m):
    """Largest K >= 1 with K p (p-1) < 2^m; a pending CORR then cannot re-wrap."""
    return max(1, ((1 << m) - 1) // (p * (p - 1)))


def listing_reductions(dim, K):
    """One reduction per full block when K < dim, then one for the tail."""
    return (dim // K if K < dim else 0) + 1


def wrap_detected(before, after):
    """
    Unsigned wrap test of the overflow kernels: adding a value below 2^m
    wrapped iff the sum went down.
    """
    return after < before


# =============================================================================
# Configuration and results
# =============================================================================

@dataclass(frozen=True)
class DotResult:
    """
    value: canonical residue (aB-coded for the Montgomery kernels)
    reductions: remainders and Montgomery reductions performed
    corrections: CORR additions (and subtractions) fired
    tests: overflow tests executed
    underflows: the subset of corrections that subtracted CORR
    """
    value: int
    reductions: int
    corrections: int = 0
    tests: int = 0
    underflows: int = 0


@dataclass(frozen=True)
class KernelConfig:
    p: int
    m: int
    K: int
    corr: int
    kind: str
    representation: str
    mont: Optional[MontgomeryContext] = field(default=None, compare=False, repr=False)

    @classmethod
    def build(cls, kind, p, m=32, representation=None):
        """
        Derive K and CORR for a kernel.

        Raises:
            KernelPreconditionError: unknown kind, or a representation the
                kernel does not run on
            FieldBoundError: p outside the representation bound
        """
        if kind not in ADMITTED:
            raise KernelPreconditionError(f"unknown kernel kind {kind!r}")
        representation = representation or ADMITTED[kind][0]
        if representation not in ADMITTED[kind]:
            raise KernelPreconditionError(
                f"{kind} does not run on the {representation} representation"
            )
        if representation == 'float' and m != MANTISSA_BITS:
            raise KernelPreconditionError(f"float kernels use m={MANTISSA_BITS}, got m={m}")
        FieldParams(p, m, representation == 'centered')
        _check_bound(representation, p, m)

        if kind in ('hybrid', 'hybrid-montgomery'):
            K = hybrid_block(p, m)
        elif representation == 'centered':
            K = centered_block(p, m)
        else:
            K = delayed_block(p, m)

        if kind in UNSIGNED_OVERFLOW_KINDS:
            if p * (p - 1) >= (1 << m):
                raise KernelPreconditionError(
                    f"p={p}: p(p-1) must stay below 2^{m} for overflow correction"
                )

        mont = MontgomeryContext(p, m) if representation == 'montgomery' else None
        return cls(p, m, K, (1 << m) % p, kind, representation, mont)

    @property
    def dtype(self):
        return ACCUMULATOR_DTYPES[(self.representation, self.m)]

    def encode(self, values):
        """Canonical residues -> this representation's storage."""
        p = self.p
        v = [int(x) % p for x in values]
        if self.representation == 'centered':
            half = (p - 1) // 2
            v = [x - p if x > half else x for x in v]
        elif self.representation == 'montgomery':
            v = [(x << self.mont.shift) % p for x in v]
        return np.array(v, dtype=self.dtype)

    def decode(self, value):
        """Kernel result -> canonical residue."""
        if self.representation == 'montgomery':
            return self.mont.from_mont(value)
        return int(value) % self.p


def _check_bound(representation, p, m):
    if representation == 'zpz':
        bound = zpz_bound(m, signed=False)
    elif representation == 'centered':
        bound = centered_bound(m)
    elif representation == 'montgomery':
        bound = montgomery_bound(m)
    else:
        bound = float_bound()
    if p > bound:
        raise FieldBoundError(f"{representation} {m}-bit kernel", p, bound)


def _vectors(a, b, config):
    a = np.asarray(a, dtype=config.dtype)
    b = np.asarray(b, dtype=config.dtype)
    if a.shape != b.shape or a.ndim != 1:
        raise KernelPreconditionError(f"vector shapes differ: {a.shape} vs {b.shape}")
    return a, b


def _require(config, *kinds):
    if config.kind not in kinds:
        raise KernelPreconditionError(f"kernel expects a {' / '.join(kinds)} config, got {config.kind}")


# =============================================================================
# Kernels
# =============================================================================

def dot_naive(a, b, field):
    """One axpyin per element, in any field object; decoded result."""
    if len(a) != len(b):
        raise KernelPreconditionError(f"vector lengths differ: {len(a)} vs {len(b)}")
    r = field.encode(0)
    for x, y in zip(a, b):
        r = field.axpyin(r, x, y)
    return DotResult(int(field.decode(r)), len(a))


def dot_delayed_wide(a, b, config):
    """Everything accumulated in one wide word, a single reduction at the end."""
    _require(config, 'delayed')
    a, b = _vectors(a, b, config)
    if a.size > config.K:
        raise KernelPreconditionError(
            f"dim={a.size} exceeds the delayed bound K={config.K} for p={config.p}, m={config.m}"
        )
    total = np.dot(a, b)
    if config.representation == 'float':
        value = FloatField(config.p).float_reduce(total)
    else:
        value = int(total) % config.p
    return DotResult(int(value), 1)


def dot_blocked(a, b, config):
    """
    Full blocks of K products each followed by a reduction (only when
    K < dim), then the tail and a final reduction. Each block is summed from
    zero and folded into the result with a modular addition.
    """
    _require(config, 'blocked', 'delayed')
    a, b = _vectors(a, b, config)
    p, K, n = config.p, config.K, a.size

    full = (n // K) * K if K < n else 0
    sums = [np.dot(a[start:start + K], b[start:start + K]) for start in range(0, full, K)]
    sums.append(np.dot(a[full:], b[full:]))
    if config.representation == 'float':
        residues = FloatField(p).reduce_array(sums).astype(np.int64).tolist()
    else:
        residues = [int(s) % p for s in sums]

    total = 0
    for r in residues:
        total += r
        if total >= p:
            total -= p
    return DotResult(total, listing_reductions(n, K))


def _overflow_sum(products, config):
    """m-bit unsigned running sum of `products` with CORR on every wrap."""
    mask = (1 << config.m) - 1
    total = corrections = tests = 0
    for product in products:
        before = total
        total = (total + product) & mask
        tests += 1
        if wrap_detected(before, total):
            total += config.corr
            corrections += 1
    return total, corrections, tests


def _block_sums(a, b, K):
    return [int(np.dot(a[s:s + K], b[s:s + K])) for s in range(0, a.size, K)]


def dot_overflow(a, b, config):
    """Let the unsigned accumulator wrap; add CORR = 2^m mod p whenever it does."""
    _require(config, 'overflow')
    a, b = _vectors(a, b, config)
    products = [x * y for x, y in zip(a.tolist(), b.tolist())]
    total, corrections, tests = _overflow_sum(products, config)
    return DotResult(total % config.p, 1, corrections, tests)


def dot_overflow_centered(a, b, config):
    """
    Signed m-bit wraparound over centered inputs. A positive product that
    made the sum go down wrapped upward (add CORR); a negative product that
    made it go up wrapped downward (subtract CORR).
    """
    _require(config, 'overflow-centered')
    a, b = _vectors(a, b, config)
    half_word = 1 << (config.m - 1)
    mask = (1 << config.m) - 1
    total = corrections = underflows = tests = 0
    for x, y in zip(a.tolist(), b.tolist()):
        product = x * y
        before = total
        total = ((total + product + half_word) & mask) - half_word
        tests += 2
        if product > 0 and total < before:
            total += config.corr
            corrections += 1
        elif product < 0 and total > before:
            total -= config.corr
            corrections += 1
            underflows += 1
    return DotResult(total % config.p, 1, corrections, tests, underflows)


def _hybrid_sum(a, b, config):
    """
    Each block of K products lands on the carried residue in the m-bit
    accumulator, gets one wrap test, then one reduction. K p(p-1) < 2^m
    leaves room for the carry (or a CORR) on top of a full block.
    Returns (residue, corrections, tests, reductions).
    """
    mask = (1 << config.m) - 1
    total = corrections = tests = reductions = 0
    for block_sum in _block_sums(a, b, config.K):
        before = total
        total = (total + block_sum) & mask
        tests += 1
        if wrap_detected(before, total):
            total += config.corr
            corrections += 1
        total %= config.p
        reductions += 1
    return total, corrections, tests, max(reductions, 1)


def dot_hybrid(a, b, config):
    """Blocks of K products summed without tests; one wrap test and one reduction per block."""
    _require(config, 'hybrid')
    a, b = _vectors(a, b, config)
    total, corrections, tests, reductions = _hybrid_sum(a, b, config)
    return DotResult(total, reductions, corrections, tests)


# =============================================================================
# Montgomery kernels: inputs aB mod p, products carry B^2
# =============================================================================

def dot_montgomery_blocked(a, b, config):
    """Blocked over aB-coded vectors; the final redc strips the extra B."""
    _require(config, 'montgomery-blocked')
    a, b = _vectors(a, b, config)
    p, K, n = config.p, config.K, a.size

    full = (n // K) * K if K < n else 0
    total = 0
    for start in range(0, full, K):
        total += int(np.dot(a[start:start + K], b[start:start + K])) % p
        if total >= p:
            total -= p
    total += int(np.dot(a[full:], b[full:])) % p
    if total >= p:
        total -= p
    return DotResult(config.mont.redc(total), listing_reductions(n, K) + 1)


def dot_overflow_montgomery(a, b, config):
    """Overflow trick on aB-coded vectors: one remainder, then one redc."""
    _require(config, 'overflow-montgomery')
    a, b = _vectors(a, b, config)
    products = [x * y for x, y in zip(a.tolist(), b.tolist())]
    total, corrections, tests = _overflow_sum(products, config)
    return DotResult(config.mont.redc(total % config.p), 2, corrections, tests)


def dot_hybrid_montgomery(a, b, config):
    """Hybrid kernel on aB-coded vectors: one reduction per block, then one redc."""
    _require(config, 'hybrid-montgomery')
    a, b = _vectors(a, b, config)
    total, corrections, tests, reductions = _hybrid_sum(a, b, config)
    return DotResult(config.mont.redc(total), reductions + 1, corrections, tests)


# =============================================================================
# Registry used by the benchmark
# =============================================================================

# name -> (function, kind, representation, accumulator bits)
KERNELS = {
    'delayed-zpz': (dot_delayed_wide, 'delayed', 'zpz', 64),
    'delayed-float': (dot_delayed_wide, 'delayed', 'float', MANTISSA_BITS),
    'blocked-zpz': (dot_blocked, 'blocked', 'zpz', None),
    'blocked-centered': (dot_blocked, 'blocked', 'centered', None),
    'blocked-float': (dot_blocked, 'blocked', 'float', MANTISSA_BITS),
    'overflow-zpz': (dot_overflow, 'overflow', 'zpz', None),
    'overflow-centered': (dot_overflow_centered, 'overflow-centered', 'centered', None),
    'hybrid-zpz': (dot_hybrid, 'hybrid', 'zpz', None),
    'blocked-montgomery': (dot_montgomery_blocked, 'montgomery-blocked', 'montgomery', None),
    'overflow-montgomery': (dot_overflow_montgomery, 'overflow-montgomery', 'montgomery', None),
    'hybrid-montgomery': (dot_hybrid_montgomery, 'hybrid-montgomery', 'montgomery', None),
}


def kernel_config(name, p, m=32):
    """KernelConfig for a registered kernel; None bits means the word width m."""
    _, kind, representation, bits = KERNELS[name]
    return KernelConfig.build(kind, p, bits or m, representation)


if __name__ == "__main__":
    print("=" * 60)
    print("Block lengths at m=32")
    print("=" * 60)
    for p in (101, 2897, 2903, 32749, 65521):
        print(f"   p={p:<6} delayed K={delayed_block(p, 32):<8} hybrid K={hybrid_block(p, 32)}")
    print(f"   p=40009, m=64: K={delayed_block(40009, 64):.3e}")
    config = KernelConfig.build('overflow', 65521)
    ones = config.encode([65520] * 512)
    print(f"   overflow, 512 x (p-1)^2: {dot_overflow(ones, ones, config)}")
