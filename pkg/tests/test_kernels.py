"""Tests for the dot product kernels and their block lengths."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classical import ZpzField
from errors import DomainError, FieldBoundError, FieldError, KernelPreconditionError
from kernels import (
    KERNELS, KernelConfig, centered_block, delayed_block, dot_blocked,
    dot_delayed_wide, dot_hybrid, dot_montgomery_blocked, dot_naive,
    dot_overflow, dot_overflow_centered, hybrid_block, kernel_config,
    listing_reductions, wrap_detected,
)
from oracle import oracle_dot
from zech import ZechField

ORACLE_PRIMES = (3, 5, 7, 101, 1009, 2897, 2903, 32749, 40009, 40499, 46337, 65521)


def _run(name, a, b, p, m=32):
    fn = KERNELS[name][0]
    cfg = kernel_config(name, p, m)
    result = fn(cfg.encode(a), cfg.encode(b), cfg)
    return cfg.decode(result.value), result, cfg


# =============================================================================
# Block lengths
# =============================================================================

@pytest.mark.parametrize("p", [3, 101, 2897, 2903, 32749, 40009, 65521])
@pytest.mark.parametrize("m", [32, 64])
def test_block_lengths_are_tight(p, m):
    w = (p - 1) ** 2
    K = delayed_block(p, m)
    assert K * w < 2 ** m <= (K + 1) * w

    h = (p - 1) // 2
    Kc = centered_block(p, m)
    assert Kc * h * h < 2 ** (m - 1) <= (Kc + 1) * h * h
    assert Kc >= 2 * K

    Kh = hybrid_block(p, m)
    assert Kh * p * (p - 1) < 2 ** m <= (Kh + 1) * p * (p - 1)


def test_known_block_lengths():
    assert delayed_block(2897, 32) == 512
    assert delayed_block(2903, 32) == 509
    assert hybrid_block(2897, 32) == 511
    assert delayed_block(65521, 32) == 1
    assert delayed_block(40009, 64) == pytest.approx(1.15e10, rel=0.01)


def test_centered_block_needs_odd_prime():
    with pytest.raises(DomainError):
        centered_block(2, 32)


def test_listing_reductions():
    assert listing_reductions(512, 512) == 1
    assert listing_reductions(512, 509) == 2
    assert listing_reductions(512, 1) == 513
    assert listing_reductions(10, 100) == 1


def test_correction_constant():
    assert KernelConfig.build('overflow', 65521).corr == 225
    assert KernelConfig.build('overflow', 7).corr == 2 ** 32 % 7


# =============================================================================
# Overflow correction
# =============================================================================

def test_overflow_all_max_values():
    # (p-1)^2 sits 2096896 below 2^32, every addition after the first wraps
    p = 65521
    a = [p - 1] * 512
    value, result, _ = _run('overflow-zpz', a, a, p)
    assert value == oracle_dot(a, a, p)
    assert result.corrections == 511
    assert result.tests == 512
    assert result.reductions == 1


def test_overflow_without_wrap():
    p = 101
    a = list(range(50))
    value, result, _ = _run('overflow-zpz', a, a, p)
    assert value == oracle_dot(a, a, p)
    assert result.corrections == 0


def test_hybrid_full_blocks_never_rewrap():
    p = 2897
    a = [p - 1] * (5 * 511)
    value, result, cfg = _run('hybrid-zpz', a, a, p)
    assert cfg.K == 511
    # a full block of (p-1)^2 products plus the carried residue stays below 2^32
    assert (p - 1) + cfg.K * (p - 1) ** 2 < 2 ** 32
    assert value == oracle_dot(a, a, p)
    assert result.corrections == 0
    assert result.tests == 5
    assert result.reductions == 5


def test_centered_overflow_upward():
    p = 65521
    h = (p - 1) // 2
    value, result, _ = _run('overflow-centered', [h] * 4, [h] * 4, p)
    assert value == oracle_dot([h] * 4, [h] * 4, p)
    assert result.corrections == 1
    assert result.underflows == 0
    assert result.tests == 8


def test_centered_overflow_downward():
    p = 65521
    h = (p - 1) // 2
    a, b = [h] * 4, [p - h] * 4
    value, result, _ = _run('overflow-centered', a, b, p)
    assert value == oracle_dot(a, b, p)
    assert result.corrections == 1
    assert result.underflows == 1


def test_centered_overflow_mixed_signs_has_no_false_positive():
    p = 65521
    h = (p - 1) // 2
    # large negative then positive products cross zero without wrapping
    a = [h, h, h, h]
    b = [p - h, h, p - h, h]
    value, result, _ = _run('overflow-centered', a, b, p)
    assert value == oracle_dot(a, b, p)
    assert result.corrections == 0


def _centered_blocks_with_unsigned_test(a, b, p, K, m=32):
    """Signed block sums run through the unsigned detect-and-correct loop."""
    half_word = 1 << (m - 1)
    mask = (1 << m) - 1
    corr = (1 << m) % p
    total = fired = 0
    for s in range(0, len(a), K):
        block_sum = sum(x * y for x, y in zip(a[s:s + K], b[s:s + K]))
        before = total
        total = ((total + block_sum + half_word) & mask) - half_word
        if wrap_detected(before, total):
            total += corr
            fired += 1
    return total % p, fired


def test_centered_blocks_break_the_unsigned_wrap_test():
    p = 65521
    h = (p - 1) // 2
    a = [h] * 5
    b = [h, h, h, h, -h]
    # prefix sums h^2, 2h^2, 3h^2 (wraps once), 4h^2, 3h^2: one real wrap
    prefix = [k * h * h for k in (0, 1, 2, 3, 4, 3)]
    epochs = [(s + 2 ** 31) // 2 ** 32 for s in prefix]
    real_wraps = sum(1 for x, y in zip(epochs, epochs[1:]) if x != y)
    assert real_wraps == 1

    value, fired = _centered_blocks_with_unsigned_test(a, b, p, K=1)
    # the last negative product lowers the sum and fires a second correction
    assert fired == 2
    canonical_b = [x % p for x in b]
    assert value != oracle_dot(a, canonical_b, p)
    assert _run('hybrid-zpz', a, canonical_b, p)[0] == oracle_dot(a, canonical_b, p)


# =============================================================================
# Reduction counts
# =============================================================================

def test_blocked_reduction_step_between_2897_and_2903(rng):
    for p, expected in ((2897, 1), (2903, 2)):
        a = rng.integers(0, p, 512).tolist()
        b = rng.integers(0, p, 512).tolist()
        value, result, _ = _run('blocked-zpz', a, b, p)
        assert value == oracle_dot(a, b, p)
        assert result.reductions == expected


def test_montgomery_blocked_adds_final_redc(rng):
    p = 40009
    cfg = kernel_config('blocked-montgomery', p)
    assert cfg.K == 2
    a = rng.integers(0, p, 512).tolist()
    b = rng.integers(0, p, 512).tolist()
    result = dot_montgomery_blocked(cfg.encode(a), cfg.encode(b), cfg)
    assert result.reductions == 512 // 2 + 1 + 1
    assert cfg.decode(result.value) == oracle_dot(a, b, p)


def test_montgomery_overflow_reduces_twice(rng):
    p = 40499
    a = rng.integers(0, p, 512).tolist()
    b = rng.integers(0, p, 512).tolist()
    value, result, _ = _run('overflow-montgomery', a, b, p)
    assert value == oracle_dot(a, b, p)
    assert result.reductions == 2


def test_hybrid_montgomery_adds_final_redc(rng):
    p = 40499
    a = rng.integers(0, p, 512).tolist()
    b = rng.integers(0, p, 512).tolist()
    value, result, cfg = _run('hybrid-montgomery', a, b, p)
    assert cfg.K == 2
    assert value == oracle_dot(a, b, p)
    assert result.reductions == 512 // 2 + 1


@pytest.mark.parametrize("p, expected", [(1009, 1), (2887, 1), (2897, 2), (2903, 2), (32749, 128)])
def test_hybrid_reductions_follow_block_count(p, expected, rng):
    a = rng.integers(0, p, 512).tolist()
    b = rng.integers(0, p, 512).tolist()
    value, result, cfg = _run('hybrid-zpz', a, b, p)
    assert value == oracle_dot(a, b, p)
    assert result.reductions == expected == -(-512 // cfg.K)
    assert result.tests == expected
    assert (result.reductions == 1) == (p * (p - 1) < 2 ** 23)


def test_reduction_counts_fall_from_naive_to_hybrid(rng):
    primes = [p for p in ORACLE_PRIMES if p * (p - 1) < 2 ** (32 - 9)]
    assert primes == [3, 5, 7, 101, 1009]
    for p in primes:
        a = rng.integers(0, p, 512).tolist()
        b = rng.integers(0, p, 512).tolist()
        fld = ZpzField(p, signed=False)
        naive = dot_naive([fld.encode(x) for x in a], [fld.encode(y) for y in b], fld)
        blocked = _run('blocked-zpz', a, b, p)[1]
        hybrid = _run('hybrid-zpz', a, b, p)[1]
        assert naive.reductions >= blocked.reductions >= hybrid.reductions
        assert hybrid.reductions == 1


# =============================================================================
# Preconditions
# =============================================================================

def test_delayed_refuses_long_vectors():
    cfg = KernelConfig.build('delayed', 2903)
    a = cfg.encode([1] * (cfg.K + 1))
    with pytest.raises(KernelPreconditionError):
        dot_delayed_wide(a, a, cfg)
    assert dot_delayed_wide(a[:-1], a[:-1], cfg).value == cfg.K % 2903


def test_build_rejects_bad_combinations():
    with pytest.raises(KernelPreconditionError):
        KernelConfig.build('sideways', 101)
    with pytest.raises(KernelPreconditionError):
        KernelConfig.build('overflow', 101, representation='centered')
    with pytest.raises(KernelPreconditionError):
        KernelConfig.build('blocked', 101, 32, 'float')
    with pytest.raises(FieldBoundError):
        KernelConfig.build('overflow', 65537)
    with pytest.raises(FieldBoundError):
        kernel_config('blocked-montgomery', 40507)
    with pytest.raises(DomainError):
        KernelConfig.build('blocked', 100)


def test_kernels_check_their_config():
    cfg = KernelConfig.build('blocked', 101)
    a = cfg.encode([1, 2, 3])
    with pytest.raises(KernelPreconditionError):
        dot_overflow(a, a, cfg)
    with pytest.raises(KernelPreconditionError):
        dot_hybrid(a, a, cfg)
    with pytest.raises(KernelPreconditionError):
        dot_overflow_centered(a, a, cfg)
    with pytest.raises(KernelPreconditionError):
        dot_blocked(a, a[:2], cfg)


def test_naive_rejects_length_mismatch():
    with pytest.raises(KernelPreconditionError):
        dot_naive([1, 2], [1], ZpzField(7))


# =============================================================================
# Agreement with the oracle
# =============================================================================

def _extreme_vectors(p, dim):
    return [p - 1] * dim, [p - 1] * dim


@pytest.mark.parametrize("name", sorted(KERNELS))
@pytest.mark.parametrize("p", ORACLE_PRIMES)
def test_every_kernel_matches_oracle(name, p, rng):
    try:
        cfg = kernel_config(name, p)
    except FieldError:
        pytest.skip(f"{name} does not admit p={p}")
    dim = min(512, cfg.K) if cfg.kind == 'delayed' else 512
    fn = KERNELS[name][0]
    cases = [
        (rng.integers(0, p, dim).tolist(), rng.integers(0, p, dim).tolist()),
        _extreme_vectors(p, dim),
        ([0] * dim, rng.integers(0, p, dim).tolist()),
    ]
    for a, b in cases:
        result = fn(cfg.encode(a), cfg.encode(b), cfg)
        assert cfg.decode(result.value) == oracle_dot(a, b, p)


@pytest.mark.parametrize("p", [3, 7, 101, 32749])
def test_naive_kernels_match_oracle(p, rng):
    a = rng.integers(0, p, 200).tolist()
    b = rng.integers(0, p, 200).tolist()
    expected = oracle_dot(a, b, p)
    fields = [ZpzField(p), ZpzField(p, signed=False)]
    if p <= 101:
        fields.append(ZechField(p))
    for fld in fields:
        result = dot_naive([fld.encode(x) for x in a], [fld.encode(y) for y in b], fld)
        assert result.value == expected
        assert result.reductions == 200


@pytest.mark.parametrize("p", [32749, 1000003, 94906249])
def test_blocked_float_over_several_blocks(p):
    cfg = kernel_config('blocked-float', p)
    dim = min(3 * cfg.K + 2, 20000)
    a = [p - 1] * dim
    b = [p - 2] * dim
    result = dot_blocked(cfg.encode(a), cfg.encode(b), cfg)
    assert cfg.decode(result.value) == oracle_dot(a, b, p)
    assert result.reductions == listing_reductions(dim, cfg.K)


def test_empty_vectors():
    for name in ('blocked-zpz', 'overflow-zpz', 'hybrid-zpz', 'blocked-float'):
        value, result, _ = _run(name, [], [], 101)
        assert value == 0


def _vectors_from_seed(seed, p, dim):
    gen = np.random.default_rng(seed)
    return gen.integers(0, p, dim).tolist(), gen.integers(0, p, dim).tolist()


@pytest.mark.property_based
@given(st.sampled_from([2897, 2903, 40009, 65521]), st.integers(1, 3000), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=100, deadline=None)
def test_overflow_and_hybrid_agree(p, dim, seed):
    a, b = _vectors_from_seed(seed, p, dim)
    expected = oracle_dot(a, b, p)
    for name in ('overflow-zpz', 'hybrid-zpz', 'blocked-zpz'):
        assert _run(name, a, b, p)[0] == expected


@pytest.mark.property_based
@given(st.integers(1, 1000), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=100, deadline=None)
def test_centered_overflow_agrees_at_largest_centered_prime(dim, seed):
    p = 92681
    a, b = _vectors_from_seed(seed, p, dim)
    expected = oracle_dot(a, b, p)
    assert _run('overflow-centered', a, b, p)[0] == expected
    assert _run('blocked-centered', a, b, p)[0] == expected


def test_wide_accumulators_at_64_bits(rng):
    # (p-1)^2 is just under 2^63, so two products fit a block
    p = 3037000493
    a = rng.integers(0, p, 256).tolist()
    b = rng.integers(0, p, 256).tolist()
    cfg = KernelConfig.build('blocked', p, 64)
    assert cfg.K == 2
    result = dot_blocked(cfg.encode(a), cfg.encode(b), cfg)
    assert result.value == oracle_dot(a, b, p)
    assert result.reductions == 129
    assert np.dtype(cfg.dtype) == np.uint64
