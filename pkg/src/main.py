"""
Benchmark command line --
Experiments: atomic operations, dot product sweeps, Zech operation counts
"""

import argparse
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from bench import (
    DOT_KERNELS, NAIVE_KERNELS, REPRESENTATIONS, BenchSpec, all_verified,
    default_sweep, run_experiment,
)
from errors import FieldError
from kernels import KERNELS
from report import BenchReport, write_csv, write_plot_files
from zech import ZechField, operation_count_means


def parse_primes(text):
    """'p1,p2,...' or 'min:max:points' (log-spaced sweep, no landmarks)."""
    if ':' in text:
        try:
            lo, hi, points = (int(part) for part in text.split(':'))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected min:max:points, got {text!r}")
        return default_sweep(lo, hi, points, landmarks=())
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated prime list, got {text!r}")


def parse_list(text):
    return [part.strip() for part in text.split(',') if part.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        description="Word-size prime field arithmetic and dot product benchmark",
    )
    parser.add_argument('--experiment', choices=('atomic', 'dotprod', 'zech-counts'),
                        default='dotprod')
    parser.add_argument('--reps', type=int, default=None,
                        help="fixed repetitions per cell (default: auto-scaled)")
    parser.add_argument('--kernels', type=parse_list, default=None,
                        help=f"dot product kernels, from {', '.join(DOT_KERNELS + NAIVE_KERNELS[1:])}")
    parser.add_argument('--representations', type=parse_list, default=None,
                        help=f"atomic representations, from {', '.join(REPRESENTATIONS)}")
    parser.add_argument('--primes', type=parse_primes, default=None,
                        help="comma separated primes or min:max:points")
    parser.add_argument('--dim', type=int, default=None)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--out', default=None, help="CSV path")
    parser.add_argument('--plot-dir', default=None, help="write one .dat file per series here")
    parser.add_argument('--min-cell-ms', type=int, default=None)
    return parser


def run_zech_counts(primes):
    """Mean index operations per Zech operation over invertible operands."""
    for q in primes or [101]:
        print(f"\n🔢 GF({q}): mean +/-, tests and table accesses")
        print("-" * 70)
        for op, (adds, tests, accesses) in operation_count_means(ZechField(q)).items():
            print(f"   {op:<4}  +/- {adds:.4f}   tests {tests:.4f}   accesses {accesses:.0f}")
    print()
    return 0


def main(argv=None):
    """Parse arguments, run the experiment, write CSV and summary; return the exit code."""
    args = build_parser().parse_args(argv)

    print("=" * 70)
    print("🧮 Word-Size Prime Field Benchmark")
    print("=" * 70)
    print()

    try:
        if args.experiment == 'zech-counts':
            return run_zech_counts(args.primes)

        unknown = [k for k in args.kernels or [] if k not in KERNELS and k not in NAIVE_KERNELS]
        if unknown:
            raise FieldError(f"unknown kernels: {', '.join(unknown)}")

        spec = BenchSpec(
            experiment=args.experiment,
            representations=args.representations if args.representations is not None else list(REPRESENTATIONS),
            kernels=args.kernels if args.kernels is not None else list(DOT_KERNELS),
            primes=args.primes,
            dim=args.dim,
            reps=args.reps,
            seed=args.seed,
            min_cell_ms=args.min_cell_ms,
        )

        # =================================================================
        # Run
        # =================================================================
        print(f"⏱️  Step 1: Running {spec.experiment} benchmark...")
        print("-" * 70)
        print(f"   primes: {len(spec.primes)}, dim: {spec.dim}, seed: {spec.seed}")
        rows = run_experiment(spec)
        print(f"   ✅ {len(rows)} cell(s) done")
        print()

        # =================================================================
        # Output
        # =================================================================
        print("💾 Step 2: Writing results...")
        print("-" * 70)
        out = args.out or os.path.join(config.BENCH_OUTPUT_DIR, config.BENCH_CSV_NAME)
        write_csv(rows, out)
        print(f"   CSV: {out}")
        if args.plot_dir:
            paths = write_plot_files(rows, args.plot_dir)
            print(f"   Plot files: {len(paths)} in {args.plot_dir}")
        print()

        BenchReport(os.path.dirname(os.path.abspath(out))).generate_report(rows)

        verified = all_verified(rows)
        print()
        if verified:
            print("✨ All executed cells agree with the oracle")
        else:
            print("❌ Some cells disagree with the oracle")
        print("=" * 70)
        return 0 if verified else 1

    except FieldError as e:
        print()
        print("=" * 70)
        print(f"❌ Error: {e}")
        print("=" * 70)
        print()
        return 2

    except Exception as e:
        print()
        print("=" * 70)
        print(f"❌ Error: {e}")
        print("=" * 70)
        print()
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
