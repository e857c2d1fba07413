"""
Benchmark Runners
Atomic operations on vectors of residues, and dot product sweeps over primes.
Every timed cell is also checked against the exact oracle.
"""

import sys
import os
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from tqdm import tqdm

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from classical import CenteredField, RemainderField, ZpzField
from errors import FieldError
from floatrep import FloatField
from kernels import KERNELS, dot_naive, kernel_config
from montgomery import MontgomeryContext
from numtheory import prev_prime
from oracle import ATOMIC_OPS, oracle_dot, oracle_op
from zech import ZechField

REPRESENTATIONS = ('zpz', 'zpz-unsigned', 'remainder', 'centered', 'montgomery', 'float', 'zech')
NAIVE_KERNELS = tuple(f"naive-{rep}" for rep in REPRESENTATIONS)
DOT_KERNELS = ('naive-zpz',) + tuple(KERNELS)

REDUCTION_KEYS = ('remainders', 'redc', 'reductions')
CORRECTION_KEYS = ('plus_p', 'minus_p')


def make_field(representation, p, m=32):
    """Field object for a representation name (see REPRESENTATIONS)."""
    if representation == 'zpz':
        return ZpzField(p, m, signed=True)
    if representation == 'zpz-unsigned':
        return ZpzField(p, m, signed=False)
    if representation == 'remainder':
        return RemainderField(p, m)
    if representation == 'centered':
        return CenteredField(p, m)
    if representation == 'montgomery':
        return MontgomeryContext(p, m)
    if representation == 'float':
        return FloatField(p)
    if representation == 'zech':
        return ZechField(p)
    raise FieldError(f"unknown representation {representation!r}")


def default_sweep(lo=None, hi=None, points=None, landmarks=None):
    """Log-spaced points in [lo, hi] snapped down to primes, plus the landmark primes."""
    lo = lo or config.BENCH_SWEEP_MIN
    hi = hi or config.BENCH_SWEEP_MAX
    points = points or config.BENCH_SWEEP_POINTS
    landmarks = config.BENCH_LANDMARK_PRIMES if landmarks is None else landmarks
    primes = {prev_prime(int(round(x))) for x in np.geomspace(lo, hi, points)}
    primes.update(int(p) for p in landmarks)
    return sorted(p for p in primes if p is not None and lo <= p <= hi)


@dataclass
class BenchSpec:
    """What to run; None fields fall back to config."""
    experiment: str = 'dotprod'
    representations: List[str] = field(default_factory=lambda: list(REPRESENTATIONS))
    kernels: List[str] = field(default_factory=lambda: list(DOT_KERNELS))
    primes: Optional[List[int]] = None
    dim: Optional[int] = None
    reps: Optional[int] = None
    seed: Optional[int] = None
    min_cell_ms: Optional[int] = None
    cells: Optional[int] = None
    word_bits: Optional[int] = None

    def __post_init__(self):
        if self.experiment not in ('atomic', 'dotprod'):
            raise FieldError(f"unknown experiment {self.experiment!r}")
        if self.dim is None:
            self.dim = config.BENCH_ATOMIC_DIM if self.experiment == 'atomic' else config.BENCH_DOTPROD_DIM
        if self.primes is None:
            self.primes = list(config.BENCH_ATOMIC_PRIMES) if self.experiment == 'atomic' else default_sweep()
        self.seed = config.BENCH_SEED if self.seed is None else self.seed
        self.min_cell_ms = config.BENCH_MIN_CELL_MS if self.min_cell_ms is None else self.min_cell_ms
        self.cells = self.cells or config.BENCH_CELLS
        self.word_bits = self.word_bits or config.BENCH_WORD_BITS


# =============================================================================
# Timing
# =============================================================================

def _time(fn, reps):
    start = time.perf_counter()
    result = None
    for _ in range(reps):
        result = fn()
    return time.perf_counter() - start, result


def time_cell(fn, spec, check=None):
    """
    Scale repetitions until one cell lasts min_cell_ms (unless spec.reps is
    fixed), then time spec.cells cells. The last result of every batch goes
    through `check`.
    Input generation happens before this is called and is never timed.

    Returns:
        (reps, median seconds per cell, whether every check passed)
    """
    verified = True

    def batch(reps):
        nonlocal verified
        seconds, last = _time(fn, reps)
        if check is not None and not check(last):
            verified = False
        return seconds

    reps = spec.reps or 1
    if not spec.reps:
        while batch(reps) * 1000 < spec.min_cell_ms:
            reps *= 2
    seconds = float(np.median([batch(reps) for _ in range(spec.cells)]))
    return reps, seconds, verified


def _row(experiment, representation, kernel, prime, dim, reps=0, seconds=0.0,
         mops=0.0, reductions=0, corrections=0, status='ok'):
    return {
        'experiment': experiment,
        'representation': representation,
        'kernel': kernel,
        'prime': prime,
        'dim': dim,
        'reps': reps,
        'seconds': seconds,
        'mops': mops,
        'reductions': reductions,
        'corrections': corrections,
        'status': status,
    }


def _progress(items, desc):
    return tqdm(items, desc=desc, disable=not config.ENABLE_PROGRESS_BAR, leave=False)


# =============================================================================
# Atomic operations
# =============================================================================

def _atomic_call(fld, op):
    if op == 'neg':
        return lambda x, y, z: fld.neg(x)
    if op == 'axpy':
        return lambda x, y, z: fld.axpy(x, y, z)
    if op == 'axpyin':
        return lambda x, y, z: fld.axpyin(x, y, z)
    method = getattr(fld, op)
    return lambda x, y, z: method(x, y)


def _tally_snapshot(fld):
    tally = getattr(fld, 'tally', None) or {}
    return (sum(tally.get(k, 0) for k in REDUCTION_KEYS),
            sum(tally.get(k, 0) for k in CORRECTION_KEYS))


def run_atomic(spec):
    """
    One row per (representation, operation, prime): the operation applied
    elementwise over spec.dim residues, timed, and checked against the oracle.
    """
    rows = []
    cells = [(p, rep) for p in spec.primes for rep in spec.representations]
    for p, rep in _progress(cells, "atomic"):
        try:
            fld = make_field(rep, p, spec.word_bits)
        except FieldError as e:
            rows.extend(_row('atomic', rep, op, p, spec.dim, status=f"skipped: {e}")
                        for op in ATOMIC_OPS)
            continue

        rng = np.random.default_rng([spec.seed, p])
        xs = rng.integers(0, p, spec.dim).tolist()
        ys = rng.integers(1, p, spec.dim).tolist()
        zs = rng.integers(0, p, spec.dim).tolist()
        ex = [fld.encode(v) for v in xs]
        ey = [fld.encode(v) for v in ys]
        ez = [fld.encode(v) for v in zs]

        for op in ATOMIC_OPS:
            call = _atomic_call(fld, op)
            expected = [oracle_op(op, p, x, y, z) for x, y, z in zip(xs, ys, zs)]

            def run():
                return [call(x, y, z) for x, y, z in zip(ex, ey, ez)]

            def check(results):
                return [int(fld.decode(r)) for r in results] == expected

            before = _tally_snapshot(fld)
            results = run()
            after = _tally_snapshot(fld)
            verified = check(results)

            reps, seconds, timed_ok = time_cell(run, spec, check)
            mops = spec.dim * reps / (seconds * 1e6) if seconds > 0 else 0.0
            rows.append(_row('atomic', rep, op, p, spec.dim, reps, seconds, mops,
                             after[0] - before[0], after[1] - before[1],
                             'ok' if verified and timed_ok else 'mismatch'))
    return rows


# =============================================================================
# Dot products
# =============================================================================

def _dot_runner(name, p, spec):
    """(callable returning (residue, DotResult), representation) for a kernel name."""
    rng = np.random.default_rng([spec.seed, p])
    a = rng.integers(0, p, spec.dim).tolist()
    b = rng.integers(0, p, spec.dim).tolist()
    expected = oracle_dot(a, b, p)

    if name.startswith('naive-'):
        rep = name[len('naive-'):]
        fld = make_field(rep, p, spec.word_bits)
        ea = [fld.encode(v) for v in a]
        eb = [fld.encode(v) for v in b]

        def run():
            result = dot_naive(ea, eb, fld)
            return result.value, result
        return run, rep, expected

    if name not in KERNELS:
        raise FieldError(f"unknown kernel {name!r}")
    fn = KERNELS[name][0]
    cfg = kernel_config(name, p, spec.word_bits)
    ea, eb = cfg.encode(a), cfg.encode(b)

    def run():
        result = fn(ea, eb, cfg)
        return cfg.decode(result.value), result
    return run, cfg.representation, expected


def run_dotprod(spec):
    """One row per (kernel, prime); Mop/s counts a multiply and an add per element."""
    rows = []
    cells = [(name, p) for name in spec.kernels for p in spec.primes]
    for name, p in _progress(cells, "dotprod"):
        rep = KERNELS[name][2] if name in KERNELS else name[len('naive-'):]
        try:
            run, rep, expected = _dot_runner(name, p, spec)
            value, result = run()
        except FieldError as e:
            rows.append(_row('dotprod', rep, name, p, spec.dim, status=f"skipped: {e}"))
            continue

        status = 'ok' if value == expected else 'mismatch'
        if status == 'ok':
            reps, seconds, timed_ok = time_cell(run, spec, lambda out: out[0] == expected)
            if not timed_ok:
                status = 'mismatch'
        else:
            reps, seconds = 0, 0.0

        mops = 2 * spec.dim * reps / (seconds * 1e6) if seconds > 0 else 0.0
        rows.append(_row('dotprod', rep, name, p, spec.dim, reps, seconds, mops,
                         result.reductions, result.corrections, status))
    return rows


def run_experiment(spec):
    """Dispatch on spec.experiment."""
    if spec.experiment == 'atomic':
        return run_atomic(spec)
    return run_dotprod(spec)


def all_verified(rows):
    """True iff no executed cell disagreed with the oracle."""
    return all(row['status'] != 'mismatch' for row in rows)


if __name__ == "__main__":
    print("=" * 60)
    print("Benchmark smoke run")
    print("=" * 60)
    spec = BenchSpec('dotprod', kernels=['blocked-zpz', 'hybrid-zpz'],
                     primes=[2897, 2903], min_cell_ms=1, cells=1)
    for row in run_experiment(spec):
        print(f"   {row['kernel']:<12} p={row['prime']:<5} reductions={row['reductions']} {row['status']}")
