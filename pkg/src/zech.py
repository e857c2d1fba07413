"""
Zech Logarithm Module
GF(q), q = p^d, with every nonzero element stored as its discrete logarithm
to a primitive element g. Multiplication, division and negation become index
arithmetic; addition and subtraction need one access to a "plus one" table.

Codes: 0 -> 0, 1 -> q-1, g^i -> i for 1 <= i < q-1.
Extension elements are integers whose base-p digits are the polynomial
coefficients, constant term first.
"""

import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from errors import (
    ConstructionError, DomainError, FieldBoundError, TableBudgetError,
    TableFormatError, ZeroDivisionFieldError,
)
from numtheory import factorize, is_prime, primitive_root

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config

TABLE_DTYPE = np.int32
TABLE_MAGIC = b'ZECH'
TABLE_HEADER = np.dtype([
    ('magic', 'S4'),
    ('version', '<u4'),
    ('q', '<u8'),
    ('p', '<u8'),
    ('d', '<u4'),
    ('g', '<u8'),
    ('modulus', '<u8'),
])
OPERATIONS = ('mul', 'div', 'neg', 'add', 'sub')


# =============================================================================
# Polynomial helpers for GF(p)[x] (coefficient lists, constant term first)
# =============================================================================

def _digits(n, p, width):
    out = []
    for _ in range(width):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _number(digits, p):
    n = 0
    for c in reversed(digits):
        n = n * p + c
    return n


def _remainder(f, g, p):
    """f mod g for monic g."""
    r = list(f)
    dg = len(g) - 1
    for shift in range(len(r) - 1 - dg, -1, -1):
        c = r[shift + dg]
        if c:
            for k in range(dg + 1):
                r[shift + k] = (r[shift + k] - c * g[k]) % p
    return r[:dg]


def _mulmod(a, b, f, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _remainder(prod, f, p)


def _powmod(a, e, f, p):
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def is_irreducible(modulus, p, d):
    """Trial division of a monic degree-d polynomial by every monic polynomial up to degree d/2."""
    f = _digits(modulus, p, d + 1)
    for k in range(1, d // 2 + 1):
        for c in range(p ** k):
            g = _digits(c, p, k) + [1]
            if not any(_remainder(f, g, p)):
                return False
    return True


def find_irreducible(p, d):
    """Smallest monic irreducible polynomial of degree d, as its base-p encoding."""
    for c in range(p ** d):
        modulus = p ** d + c
        if is_irreducible(modulus, p, d):
            return modulus
    raise ConstructionError(f"no irreducible polynomial of degree {d} over GF({p})")


def find_primitive_element(p, d, modulus):
    """First primitive element at or after x in encoding order."""
    qbar = p ** d - 1
    f = _digits(modulus, p, d + 1)
    one = [1] + [0] * (d - 1)
    cofactors = [qbar // r for r in sorted(set(factorize(qbar)))] if qbar > 1 else []
    for candidate in range(p, p ** d):
        a = _digits(candidate, p, d)
        if all(_powmod(a, e, f, p) != one for e in cofactors):
            return candidate
    raise ConstructionError(f"no primitive element found in GF({p}^{d})")


# =============================================================================
# Tables
# =============================================================================

def check_table_budget(entries, label, itemsize=None):
    """Raise TableBudgetError if `entries` table words exceed the configured budget."""
    itemsize = itemsize or np.dtype(TABLE_DTYPE).itemsize
    needed = entries * itemsize
    if needed > config.ZECH_TABLE_BUDGET_BYTES:
        raise TableBudgetError(
            f"{label} needs {needed} bytes, budget is {config.ZECH_TABLE_BUDGET_BYTES}"
        )


@dataclass
class ZechTables:
    """
    Everything the index-only operations need.

    t_plus1[k] is the code of 1 + g^k for 0 <= k <= q-1 (g^0 = g^(q-1) = 1);
    where 1 + g^k = 0 it holds the zero code.
    """
    q: int
    p: int
    d: int
    g: int
    modulus: Optional[int]
    i_neg1: Optional[int]
    t_plus1: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)

    @property
    def qbar(self):
        return self.q - 1

    @property
    def zero_code(self):
        return 0

    @property
    def one_code(self):
        return self.q - 1

    @property
    def entries(self):
        return self.t_plus1.size + self.log_table.size + self.exp_table.size

    @property
    def nbytes(self):
        return self.t_plus1.nbytes + self.log_table.nbytes + self.exp_table.nbytes


def _check_field_size(q):
    if q > config.ZECH_MAX_FIELD_SIZE:
        raise FieldBoundError("32-bit Zech index", q, config.ZECH_MAX_FIELD_SIZE)
    check_table_budget(3 * q, f"Zech tables for GF({q})")


def _powers(p, d, g, modulus):
    """[g^0, g^1, ..., g^(q-2)] as element encodings."""
    qbar = p ** d - 1
    powers = [1] * qbar
    if d == 1:
        for i in range(1, qbar):
            powers[i] = powers[i - 1] * g % p
        return powers
    f = _digits(modulus, p, d + 1)
    gd = _digits(g, p, d)
    cur = _digits(1, p, d)
    for i in range(1, qbar):
        cur = _mulmod(cur, gd, f, p)
        powers[i] = _number(cur, p)
    return powers


def _assemble(p, d, g, modulus, t_plus1=None):
    q = p ** d
    qbar = q - 1
    powers = _powers(p, d, g, modulus)

    exp_table = np.empty(q, dtype=TABLE_DTYPE)
    exp_table[0] = 0
    exp_table[1:qbar] = powers[1:]
    exp_table[qbar] = 1

    log_table = np.empty(q, dtype=TABLE_DTYPE)
    log_table[exp_table] = np.arange(q, dtype=TABLE_DTYPE)

    if t_plus1 is None:
        # index 0 stands for g^0 = 1 here
        base = exp_table.astype(np.int64)
        base[0] = 1
        low = base % p
        t_plus1 = log_table[base - low + (low + 1) % p]

    i_neg1 = None if p == 2 else qbar // 2
    return ZechTables(q, p, d, g, modulus, i_neg1,
                      np.ascontiguousarray(t_plus1, dtype=TABLE_DTYPE),
                      log_table, exp_table)


def build_tables_prime(p):
    """Zech tables of GF(p), g the smallest primitive root."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    _check_field_size(p)
    tables = _assemble(p, 1, primitive_root(p), None)
    if config.VERBOSE:
        print(f"🔢 Built Zech tables for GF({p}), g={tables.g}")
    return tables


def build_tables_extension(p, d):
    """Zech tables of GF(p^d) over the smallest monic irreducible modulus."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if d < 1:
        raise DomainError(f"extension degree must be positive, got {d}")
    if d == 1:
        return build_tables_prime(p)
    _check_field_size(p ** d)
    modulus = find_irreducible(p, d)
    g = find_primitive_element(p, d, modulus)
    tables = _assemble(p, d, g, modulus)
    if config.VERBOSE:
        print(f"🔢 Built Zech tables for GF({p}^{d}), modulus={modulus}, g={g}")
    return tables


def build_tables(q):
    """Zech tables for a prime power q."""
    factors = factorize(q)
    if len(set(factors)) != 1:
        raise DomainError(f"{q} is not a prime power")
    return build_tables_extension(factors[0], len(factors))


# =============================================================================
# Serialization
# =============================================================================

def save_tables(tables, path):
    """Header then t_plus1 as little-endian 32-bit words, written atomically."""
    path = os.fspath(path)
    header = np.zeros(1, dtype=TABLE_HEADER)
    header['magic'] = TABLE_MAGIC
    header['version'] = config.ZECH_TABLE_FORMAT_VERSION
    header['q'] = tables.q
    header['p'] = tables.p
    header['d'] = tables.d
    header['g'] = tables.g
    header['modulus'] = tables.modulus or 0

    temp_file = path + '.tmp'
    with open(temp_file, 'wb') as f:
        f.write(header.tobytes())
        f.write(tables.t_plus1.astype('<u4').tobytes())
    os.replace(temp_file, path)

    if config.VERBOSE:
        print(f"💾 Zech tables for GF({tables.q}) saved to {path}")


def load_tables(path):
    """Inverse of save_tables; the log/exp tables are regenerated from g."""
    with open(path, 'rb') as f:
        data = f.read()

    if len(data) < TABLE_HEADER.itemsize:
        raise TableFormatError(f"{path}: truncated header")
    header = np.frombuffer(data[:TABLE_HEADER.itemsize], dtype=TABLE_HEADER)[0]
    if header['magic'] != TABLE_MAGIC:
        raise TableFormatError(f"{path}: not a Zech table file")
    if int(header['version']) != config.ZECH_TABLE_FORMAT_VERSION:
        raise TableFormatError(f"{path}: unsupported format version {int(header['version'])}")

    q, p, d = int(header['q']), int(header['p']), int(header['d'])
    if p ** d != q:
        raise TableFormatError(f"{path}: q={q} is not {p}^{d}")
    body = data[TABLE_HEADER.itemsize:]
    if len(body) != 4 * q:
        raise TableFormatError(f"{path}: expected {q} table words, found {len(body) // 4}")

    _check_field_size(q)
    modulus = int(header['modulus']) if d > 1 else None
    t_plus1 = np.frombuffer(body, dtype='<u4').astype(TABLE_DTYPE)
    return _assemble(p, d, int(header['g']), modulus, t_plus1)


# =============================================================================
# Operations
# =============================================================================

@dataclass
class OpCounters:
    """Index additions/subtractions, comparisons and table accesses."""
    adds: int = 0
    tests: int = 0
    accesses: int = 0


class ZechField:
    """
    The seven basic operations over Zech codes.

    Zero operands are handled by a branch before any index arithmetic;
    those branches are not part of the operation counts.
    """

    name = 'zech'

    def __init__(self, p, d=1, tables=None):
        self.tables = tables if tables is not None else build_tables_extension(p, d)
        self.q = self.tables.q
        self.p = self.tables.p
        self.qbar = self.tables.qbar
        self.i_neg1 = self.tables.i_neg1
        self.char2 = self.tables.p == 2
        self._plus1 = self.tables.t_plus1.tolist()
        self._log = self.tables.log_table.tolist()
        self._exp = self.tables.exp_table.tolist()

    def __repr__(self):
        t = self.tables
        return f"ZechField(q={t.q}, g={t.g})"

    # -------------------------------------------------------------------------
    # Conversions
    # -------------------------------------------------------------------------

    def encode(self, element):
        return self._log[int(element) % self.q]

    def decode(self, code):
        return self._exp[code]

    # -------------------------------------------------------------------------
    # Index-only operations
    # -------------------------------------------------------------------------

    def zech_mul(self, i, j, counter=None):
        if i == 0 or j == 0:
            return 0
        k = i + j
        if counter:
            counter.adds += 1
            counter.tests += 1
        if k > self.qbar:
            k -= self.qbar
            if counter:
                counter.adds += 1
        return k

    def zech_div(self, i, j, counter=None):
        if j == 0:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.q})")
        if i == 0:
            return 0
        r = i - j
        if counter:
            counter.adds += 1
            counter.tests += 1
        if r <= 0:
            r += self.qbar
            if counter:
                counter.adds += 1
        return r

    def zech_neg(self, i, counter=None):
        if self.char2 or i == 0:
            return i
        r = i - self.i_neg1
        if counter:
            counter.adds += 1
            counter.tests += 1
        if r <= 0:
            r += self.qbar
            if counter:
                counter.adds += 1
        return r

    def _plus(self, i, k, counter):
        """g^i * (1 + g^k) for k in [0, q-1]."""
        h = self._plus1[k]
        if counter:
            counter.accesses += 1
        if h == 0:
            return 0
        r = i + h
        if counter:
            counter.adds += 1
            counter.tests += 1
        if r > self.qbar:
            r -= self.qbar
            if counter:
                counter.adds += 1
        return r

    def zech_add(self, i, j, counter=None):
        """g^i + g^j = g^i (1 + g^(j-i))."""
        if i == 0:
            return j
        if j == 0:
            return i
        k = j - i
        if counter:
            counter.adds += 1
            counter.tests += 1
        if k < 0:
            k += self.qbar
            if counter:
                counter.adds += 1
        return self._plus(i, k, counter)

    def zech_sub(self, i, j, counter=None):
        """g^i - g^j = g^i (1 + g^(j-i+i_neg1))."""
        if self.char2:
            return self.zech_add(i, j, counter)
        if j == 0:
            return i
        if i == 0:
            return self.zech_neg(j)
        k = j - i + self.i_neg1
        if counter:
            counter.adds += 2
            counter.tests += 1
        if k < 0:
            k += self.qbar
            if counter:
                counter.adds += 1
        else:
            if counter:
                counter.tests += 1
            if k > self.qbar:
                k -= self.qbar
                if counter:
                    counter.adds += 1
        return self._plus(i, k, counter)

    mul = zech_mul
    div = zech_div
    neg = zech_neg
    add = zech_add
    sub = zech_sub

    def inv(self, i):
        return self.zech_div(self.qbar, i)

    def axpy(self, a, x, y):
        return self.zech_add(self.zech_mul(a, x), y)

    def axpyin(self, r, a, x):
        return self.axpy(a, x, r)

    # -------------------------------------------------------------------------
    # Instrumentation
    # -------------------------------------------------------------------------

    def counted_op(self, op, i, j=None):
        """Run `op` on codes (i, j) and return (result, OpCounters)."""
        if op not in OPERATIONS:
            raise DomainError(f"unknown operation {op!r}, expected one of {OPERATIONS}")
        counter = OpCounters()
        method = getattr(self, f"zech_{op}")
        result = method(i, counter=counter) if op == 'neg' else method(i, j, counter=counter)
        return result, counter


def operation_count_means(zech_field):
    """
    Mean (adds, tests, accesses) per operation over invertible operands.

    Pairs whose sum or difference is zero end on the sentinel branch and are
    left out, so every counted path runs to completion.
    """
    qbar = zech_field.qbar
    codes = range(1, qbar + 1)
    means = {}
    for op in OPERATIONS:
        totals = OpCounters()
        n = 0
        pairs = ((i, None) for i in codes) if op == 'neg' else \
                ((i, j) for i in codes for j in codes)
        for i, j in pairs:
            result, counter = zech_field.counted_op(op, i, j)
            if op in ('add', 'sub') and result == 0:
                continue
            totals.adds += counter.adds
            totals.tests += counter.tests
            totals.accesses += counter.accesses
            n += 1
        means[op] = (totals.adds / n, totals.tests / n, totals.accesses / n) if n else (0.0, 0.0, 0.0)
    return means


# =============================================================================
# Fully tabulated variant: zero coded as 2(q-1), every operation one lookup
# =============================================================================

class FullTables:
    """
    Codes: g^e -> e for 0 <= e < q-1, zero -> 2(q-1).

    t_mul[k] = k below q-1, k - (q-1) below 2(q-1), zero code above. Division
    and negation reuse t_mul with a shifted index. t_plus1 and t_sub cover
    k = j - i over [-2(q-1), 2(q-1)] (stored with offset 2(q-1)):
        both nonzero   log(1 +/- g^k), or the zero code when that is zero
        i zero         k (sub: k + i_neg1), so that i + h lands on j (or -j)
        j zero         0
    """

    def __init__(self, tables):
        qb = tables.qbar
        q = tables.q
        entries = 3 * (4 * qb + 1) + q + 2 * qb + 1
        check_table_budget(entries, f"full Zech tables for GF({q})")

        self.q = q
        self.qbar = qb
        self.zero = 2 * qb
        self.offset = 2 * qb
        self.i_neg1 = tables.i_neg1 or 0
        Z = self.zero

        t_mul = np.full(4 * qb + 1, Z, dtype=TABLE_DTYPE)
        t_mul[:qb] = np.arange(qb)
        t_mul[qb:2 * qb] = np.arange(qb)

        plus1 = tables.t_plus1.astype(np.int64)

        def to_full(codes):
            return np.where(codes == 0, Z, codes % qb)

        k_nonzero = np.arange(-qb + 1, qb)
        k_izero = np.arange(-2 * qb, -qb)

        t_plus1x = np.zeros(4 * qb + 1, dtype=TABLE_DTYPE)
        t_plus1x[k_nonzero + Z] = to_full(plus1[k_nonzero % qb])
        t_plus1x[k_izero + Z] = k_izero

        t_sub = np.zeros(4 * qb + 1, dtype=TABLE_DTYPE)
        t_sub[k_nonzero + Z] = to_full(plus1[(k_nonzero + self.i_neg1) % qb])
        t_sub[k_izero + Z] = k_izero + self.i_neg1

        self.t_in = to_full(tables.log_table.astype(np.int64)).astype(TABLE_DTYPE)
        self.t_out = np.zeros(2 * qb + 1, dtype=TABLE_DTYPE)
        self.t_out[:qb] = tables.exp_table[:qb]
        self.t_out[0] = 1

        self.t_mul = t_mul
        self.t_plus1x = t_plus1x
        self.t_sub = t_sub
        self._mul = t_mul.tolist()
        self._plus1x = t_plus1x.tolist()
        self._sub = t_sub.tolist()

    @property
    def entries(self):
        return (self.t_mul.size + self.t_plus1x.size + self.t_sub.size
                + self.t_in.size + self.t_out.size)

    def recode(self, code):
        """ZechTables code -> full code."""
        return self.zero if code == 0 else code % self.qbar

    def uncode(self, full_code):
        """Full code -> ZechTables code."""
        if full_code == self.zero:
            return 0
        return full_code if full_code else self.qbar

    def encode(self, element):
        return int(self.t_in[element])

    def decode(self, full_code):
        return int(self.t_out[full_code])

    def full_mul(self, i, j):
        return self._mul[i + j]

    def full_div(self, i, j):
        if j == self.zero:
            raise ZeroDivisionFieldError(f"division by zero in GF({self.q})")
        return self._mul[i + self.qbar - j]

    def full_neg(self, i):
        return self._mul[i + self.i_neg1]

    def full_add(self, i, j):
        return self._mul[i + self._plus1x[j - i + self.offset]]

    def full_sub(self, i, j):
        return self._mul[i + self._sub[j - i + self.offset]]


def build_full_tables(tables):
    return FullTables(tables)


if __name__ == "__main__":
    print("=" * 60)
    print("Zech logarithms")
    print("=" * 60)
    gf7 = ZechField(7)
    print(f"   {gf7}: t_plus1 = {gf7.tables.t_plus1.tolist()}")
    gf9 = ZechField(3, 2)
    print(f"   {gf9}: modulus encoding {gf9.tables.modulus}")
    print(f"\n📊 Mean operation counts over GF(101)")
    for op, (adds, tests, accesses) in operation_count_means(ZechField(101)).items():
        print(f"   {op:<4} +/- {adds:.4f}  tests {tests:.4f}  accesses {accesses:.0f}")
