"""Tests for the number theory primitives."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import DomainError, ZeroDivisionFieldError
from numtheory import (
    FieldParams, egcd, factorize, inv_mod, is_prime, next_prime, pow_mod,
    prev_prime, primitive_root,
)


def _brute_force_primes(limit):
    return [n for n in range(2, limit) if all(n % d for d in range(2, int(n ** 0.5) + 1))]


def test_egcd_known_values():
    assert egcd(0, 7) == (7, 0, 1)
    assert egcd(3, 7) == (1, -2, 1)
    g, u, v = egcd(12, 18)
    assert g == 6 and 12 * u + 18 * v == 6


def test_egcd_rejects_zero_pair_and_negatives():
    with pytest.raises(DomainError):
        egcd(0, 0)
    with pytest.raises(DomainError):
        egcd(-3, 7)


@pytest.mark.property_based
@given(st.integers(0, 2 ** 64), st.integers(1, 2 ** 64))
@settings(max_examples=200)
def test_egcd_bezout_identity(a, b):
    g, u, v = egcd(a, b)
    assert u * a + v * b == g
    assert a % g == 0 and b % g == 0


def test_inv_mod_known_values():
    assert inv_mod(3, 7) == 5
    for p in (2, 3, 65521):
        assert inv_mod(1, p) == 1
    with pytest.raises(ZeroDivisionFieldError):
        inv_mod(0, 7)
    with pytest.raises(ZeroDivisionError):
        inv_mod(14, 7)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101, 1009])
def test_inv_mod_exhaustive(p):
    for a in range(1, p):
        x = inv_mod(a, p)
        assert 0 < x < p
        assert a * x % p == 1


@pytest.mark.property_based
@given(st.sampled_from([32749, 40009, 65521, 2654435761]), st.data())
@settings(max_examples=200)
def test_inv_mod_random_residues(p, data):
    a = data.draw(st.integers(1, p - 1))
    assert a * inv_mod(a, p) % p == 1


def test_pow_mod_known_values():
    assert pow_mod(5, 0, 11) == 1
    assert pow_mod(3, 6, 7) == 1
    assert pow_mod(2, 10, 1000) == 24
    with pytest.raises(DomainError):
        pow_mod(2, 3, 0)
    with pytest.raises(DomainError):
        pow_mod(2, -1, 7)


@pytest.mark.property_based
@given(st.integers(0, 10 ** 6), st.integers(0, 200), st.integers(1, 10 ** 6))
@settings(max_examples=200)
def test_pow_mod_matches_builtin(a, e, n):
    assert pow_mod(a, e, n) == pow(a, e, n)


def test_is_prime_agrees_with_sieve():
    primes = set(_brute_force_primes(3000))
    for n in range(-2, 3000):
        assert is_prime(n) == (n in primes), n


def test_is_prime_word_size_landmarks():
    for p in (46337, 65521, 40499, 3037000493, 4294967291, 2654435761, 1073741789):
        assert is_prime(p)
    # 2^32 + 1 = 641 * 6700417
    assert not is_prime(4294967297)
    assert not is_prime(46339)


def test_next_and_prev_prime():
    assert next_prime(46337) == 46349
    assert next_prime(65521) == 65537
    assert next_prime(40499) == 40507
    assert prev_prime(65535) == 65521
    assert prev_prime(2) == 2
    assert prev_prime(1) is None


def test_factorize_examples():
    assert factorize(2) == [2]
    assert factorize(100) == [2, 2, 5, 5]
    assert factorize(40008) == [2, 2, 2, 3, 1667]
    with pytest.raises(DomainError):
        factorize(1)


@pytest.mark.property_based
@given(st.integers(2, 10 ** 9))
@settings(max_examples=100)
def test_factorize_product_and_primality(n):
    factors = factorize(n)
    product = 1
    for f in factors:
        assert is_prime(f)
        product *= f
    assert product == n
    assert factors == sorted(factors)


def test_primitive_root_examples():
    assert primitive_root(2) == 1
    assert primitive_root(3) == 2
    assert primitive_root(7) == 3
    assert primitive_root(101) == 2
    with pytest.raises(DomainError):
        primitive_root(100)


@pytest.mark.parametrize("p", [p for p in _brute_force_primes(1010) if p > 2])
def test_primitive_root_has_full_order(p):
    g = primitive_root(p)
    x, order = g, 1
    while x != 1:
        x = x * g % p
        order += 1
    assert order == p - 1
    # smallest generator
    for h in range(2, g):
        assert len({pow(h, k, p) for k in range(p - 1)}) < p - 1


def test_field_params_validation():
    params = FieldParams(65521, 32, signed=False)
    assert params.word_limit == 2 ** 32
    assert FieldParams(46337).word_limit == 2 ** 31
    with pytest.raises(DomainError):
        FieldParams(65521, 16)
    with pytest.raises(DomainError):
        FieldParams(65535)
