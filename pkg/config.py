"""
Central configuration.
Every value can be overridden from the environment or a .env file.
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    value = os.getenv(name)
    return int(value) if value not in (None, '') else default


def _env_bool(name, default):
    value = os.getenv(name)
    if value in (None, ''):
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


def _env_int_list(name, default):
    value = os.getenv(name)
    if value in (None, ''):
        return list(default)
    return [int(item) for item in value.split(',') if item.strip()]


# =============================================================================
# General
# =============================================================================

# Progress prints from library code (table construction, serialization)
VERBOSE = _env_bool('VERBOSE', False)

# =============================================================================
# Zech logarithm tables
# =============================================================================

# Construction is refused beyond this many bytes of table memory
ZECH_TABLE_BUDGET_BYTES = _env_int('ZECH_TABLE_BUDGET_BYTES', 64 * 1024 * 1024)

# Largest field handled with 32-bit signed index arithmetic
ZECH_MAX_FIELD_SIZE = 1073741789

# Serialized table format version
ZECH_TABLE_FORMAT_VERSION = 1

# =============================================================================
# Benchmark harness
# =============================================================================

BENCH_SEED = _env_int('BENCH_SEED', 42)

# Vector lengths: dot products compare on 512, atomic operations on 256
BENCH_DOTPROD_DIM = _env_int('BENCH_DOTPROD_DIM', 512)
BENCH_ATOMIC_DIM = _env_int('BENCH_ATOMIC_DIM', 256)

# Timing protocol: repetitions scaled up until one cell lasts this long,
# then the median over BENCH_CELLS cells is reported
BENCH_MIN_CELL_MS = _env_int('BENCH_MIN_CELL_MS', 50)
BENCH_CELLS = _env_int('BENCH_CELLS', 5)

# Default prime sweep: log-spaced points snapped to primes plus landmarks
BENCH_SWEEP_MIN = _env_int('BENCH_SWEEP_MIN', 3)
BENCH_SWEEP_MAX = _env_int('BENCH_SWEEP_MAX', 65521)
BENCH_SWEEP_POINTS = _env_int('BENCH_SWEEP_POINTS', 64)
BENCH_LANDMARK_PRIMES = _env_int_list(
    'BENCH_LANDMARK_PRIMES', (2897, 32749, 40009, 40499, 46337, 65521)
)

# Atomic operation benchmark prime
BENCH_ATOMIC_PRIMES = _env_int_list('BENCH_ATOMIC_PRIMES', (32749,))

# Accumulator width of the dot product experiment (32-bit words)
BENCH_WORD_BITS = _env_int('BENCH_WORD_BITS', 32)

# Output
BENCH_OUTPUT_DIR = os.getenv('BENCH_OUTPUT_DIR', 'bench_results')
BENCH_CSV_NAME = os.getenv('BENCH_CSV_NAME', 'bench.csv')
BENCH_REPORT_NAME = os.getenv('BENCH_REPORT_NAME', 'bench_summary.txt')

ENABLE_PROGRESS_BAR = _env_bool('ENABLE_PROGRESS_BAR', True)

# CSV schema (column order is part of the output contract)
CSV_HEADERS = [
    'experiment', 'representation', 'kernel', 'prime', 'dim', 'reps',
    'seconds', 'mops', 'reductions', 'corrections', 'status',
]
