"""
Benchmark Reporting Module
CSV output, plot-ready data files and a summary of a benchmark run.
"""

import csv
import json
import os
import sys
from collections import Counter, defaultdict
from datetime import datetime

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config

INT_COLUMNS = ('prime', 'dim', 'reps', 'reductions', 'corrections')
FLOAT_COLUMNS = ('seconds', 'mops')


# =============================================================================
# CSV
# =============================================================================

def write_csv(rows, path):
    """Write rows under the fixed header; temp file then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temp_file = path + '.tmp'
    with open(temp_file, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=config.CSV_HEADERS)
        writer.writeheader()
        for row in rows:
            writer.writerow({key: row[key] for key in config.CSV_HEADERS})
    os.replace(temp_file, path)
    return path


def read_csv(path):
    """Rows back with their column types."""
    with open(path, newline='') as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != config.CSV_HEADERS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        rows = []
        for raw in reader:
            row = dict(raw)
            for key in INT_COLUMNS:
                row[key] = int(row[key])
            for key in FLOAT_COLUMNS:
                row[key] = float(row[key])
            rows.append(row)
    return rows


def write_plot_files(rows, plot_dir):
    """
    One space-separated file per (experiment, kernel): prime, Mop/s,
    reductions, corrections. Skipped cells are left out.
    """
    os.makedirs(plot_dir, exist_ok=True)
    series = defaultdict(list)
    for row in rows:
        if row['status'] == 'ok':
            name = f"{row['experiment']}_{row['representation']}_{row['kernel']}"
            series[name].append((row['prime'], row['mops'], row['reductions'], row['corrections']))

    paths = []
    for name, points in sorted(series.items()):
        path = os.path.join(plot_dir, f"{name}.dat")
        np.savetxt(path, np.array(sorted(points), dtype=float),
                   fmt=['%d', '%.3f', '%d', '%d'],
                   header='prime mops reductions corrections')
        paths.append(path)
    return paths


# =============================================================================
# Summary
# =============================================================================

def reduction_steps(rows):
    """Per kernel, the primes at which the reduction count goes up."""
    by_kernel = defaultdict(list)
    for row in rows:
        if row['experiment'] == 'dotprod' and row['status'] == 'ok':
            by_kernel[row['kernel']].append((row['prime'], row['reductions']))

    steps = {}
    for kernel, points in by_kernel.items():
        points.sort()
        steps[kernel] = [
            {'prime': p, 'from': prev, 'to': cur}
            for (_, prev), (p, cur) in zip(points, points[1:]) if cur > prev
        ]
    return steps


def best_by_prime(rows):
    """Fastest verified kernel (dotprod) or representation (atomic) per prime."""
    best = {}
    for row in rows:
        if row['status'] != 'ok':
            continue
        label = row['kernel'] if row['experiment'] == 'dotprod' else f"{row['representation']}:{row['kernel']}"
        current = best.get(row['prime'])
        if current is None or row['mops'] > current['mops']:
            best[row['prime']] = {'label': label, 'mops': row['mops']}
    return dict(sorted(best.items()))


class BenchReport:
    """Summarizes the rows of a benchmark run."""

    def __init__(self, output_dir=None):
        """
        Args:
            output_dir (str, optional): where the summary goes.
                                        Defaults to config.BENCH_OUTPUT_DIR
        """
        self.output_dir = output_dir or config.BENCH_OUTPUT_DIR
        os.makedirs(self.output_dir, exist_ok=True)

    def generate_report(self, rows, save=True):
        """
        Returns:
            dict: the summary, or None for an empty run
        """
        print("\n" + "=" * 70)
        print("📊 Generating Benchmark Summary")
        print("=" * 70)

        if not rows:
            print("⚠️  No benchmark cells were run")
            return None

        statuses = Counter(
            'skipped' if row['status'].startswith('skipped') else row['status']
            for row in rows
        )
        summary = {
            'total_cells': len(rows),
            'by_status': dict(statuses),
            'by_experiment': dict(Counter(row['experiment'] for row in rows)),
            'reduction_steps': reduction_steps(rows),
            'best_by_prime': {str(p): v for p, v in best_by_prime(rows).items()},
            'mismatches': [
                {'kernel': row['kernel'], 'representation': row['representation'], 'prime': row['prime']}
                for row in rows if row['status'] == 'mismatch'
            ],
        }

        self._display_report(summary)
        if save:
            self._save_report(summary)
        return summary

    def _display_report(self, summary):
        print(f"\n📈 SUMMARY")
        print(f"   Cells run: {summary['total_cells']}")
        for status, count in sorted(summary['by_status'].items()):
            print(f"   {status}: {count}")

        steps = {k: v for k, v in summary['reduction_steps'].items() if v}
        if steps:
            print(f"\n🪜 REDUCTION STEPS")
            for kernel, points in sorted(steps.items()):
                marks = ', '.join(f"p={s['prime']} ({s['from']}->{s['to']})" for s in points[:4])
                more = f" (+{len(points) - 4} more)" if len(points) > 4 else ''
                print(f"   {kernel}: {marks}{more}")

        best = summary['best_by_prime']
        if best:
            print(f"\n🏆 FASTEST PER PRIME (last 10)")
            for prime, entry in list(best.items())[-10:]:
                print(f"   p={prime}: {entry['label']} ({entry['mops']:.1f} Mop/s)")

        if summary['mismatches']:
            print(f"\n❌ ORACLE MISMATCHES")
            for m in summary['mismatches']:
                print(f"   {m['kernel']} ({m['representation']}) at p={m['prime']}")

        print("\n" + "=" * 70)

    def _save_report(self, summary):
        try:
            report_path = os.path.join(self.output_dir, config.BENCH_REPORT_NAME)

            with open(report_path, 'w') as f:
                f.write("BENCHMARK SUMMARY\n")
                f.write("=" * 70 + "\n")
                f.write(f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n\n")

                f.write(f"Cells: {summary['total_cells']}\n")
                f.write("\nBY STATUS:\n")
                for status, count in summary['by_status'].items():
                    f.write(f"  {status}: {count}\n")

                f.write("\nREDUCTION STEPS:\n")
                for kernel, points in summary['reduction_steps'].items():
                    primes = ' '.join(str(s['prime']) for s in points) or '-'
                    f.write(f"  {kernel}: {primes}\n")

                f.write("\nFASTEST PER PRIME:\n")
                for prime, entry in summary['best_by_prime'].items():
                    f.write(f"  {prime}: {entry['label']} {entry['mops']:.3f}\n")

            json_path = os.path.splitext(report_path)[0] + '.json'
            with open(json_path, 'w') as f:
                json.dump(summary, f, indent=2)

            print(f"\n💾 Summary saved to:")
            print(f"   {report_path}")
            print(f"   {json_path}")

        except OSError as e:
            print(f"⚠️  Failed to save summary: {e}")


if __name__ == "__main__":
    print("=" * 60)
    print("Testing Benchmark Report")
    print("=" * 60)
    print("\n💡 Run from main.py after a benchmark, or point read_csv at a saved CSV")
