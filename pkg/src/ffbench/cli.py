"""``ffbench`` command line: run benchmarks, analyze CSVs, reproduce the published tables.

Exit codes: 0 success, 1 comparison failure, 2 usage or input error.
"""

import argparse
import logging
import os
import sys

from . import analysis, bench, report
from .errors import FFBenchError
from .fixtures import PAPER

REPS_ENV = "FFBENCH_REPS"


def parse_int_list(text: str) -> list[int]:
    """``"1,2,4"`` or ``"20..200:20"`` (inclusive end, step defaults to 1)."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            start, _, rest = part.partition("..")
            end, _, step = rest.partition(":")
            try:
                a, b, s = int(start), int(end), int(step or 1)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad range {part!r}; expected start..end[:step]")
            if s < 1 or b < a:
                raise argparse.ArgumentTypeError(f"bad range {part!r}; need end >= start and step >= 1")
            values.extend(range(a, b + 1, s))
        else:
            try:
                values.append(int(part))
            except ValueError:
                raise argparse.ArgumentTypeError(f"not an integer: {part!r}")
    return values


def _default_reps() -> int:
    raw = os.environ.get(REPS_ENV)
    if raw is None:
        return 31
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning("ignoring non-integer %s=%r", REPS_ENV, raw)
        return 31


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_bench(args, parser) -> int:
    try:
        config = bench.ExperimentConfig(
            input_counts=args.input,
            hidden_counts=args.hidden,
            worker_counts=args.workers,
            repetitions=args.reps,
            warmup=args.warmup,
            seed=args.seed,
            aggregate_stat=args.stat,
            pin=not args.no_pin,
        )
    except FFBenchError as exc:
        parser.error(str(exc))
    try:
        rows = bench.run_grid(config)
    except FFBenchError as exc:
        parser.error(str(exc))
    sys.stdout.write(report.emit_rows(rows, args.format))
    if not all(r.pinned for r in rows):
        print("note: some rows ran without CPU pinning", file=sys.stderr)
    return 0


def cmd_analyze(args, parser) -> int:
    try:
        serial = report.parse_rows(_read_text(args.serial_csv))
        parallel = report.parse_rows(_read_text(args.parallel_csv))
        records = analysis.build_speedup_records(
            serial, parallel, worker_count=args.workers, clamp=args.clamp
        )
    except (OSError, FFBenchError) as exc:
        print(f"ffbench analyze: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.emit_rows(records, args.format))
    return 0


def reproduce_paper(tolerance: float = 0.01):
    """Speedup records from the embedded tables and their comparison against the printed columns."""
    records = analysis.build_speedup_records(PAPER.serial_rows(), PAPER.parallel_rows(), worker_count=2)
    labels = [f"ops={r.operations}" for r in records]
    ratios = report.compare_with_fixture(
        [r.ratio for r in records], PAPER.expected_ratios, tolerance, [f"ratio {x}" for x in labels]
    )
    fractions = report.compare_with_fixture(
        [r.parallel_fraction for r in records], PAPER.expected_p, tolerance, [f"p {x}" for x in labels]
    )
    return records, ratios + fractions


def cmd_reproduce_paper(args, parser) -> int:
    if not args.tolerance > 0:
        parser.error("--tolerance must be > 0")
    records, comparison = reproduce_paper(args.tolerance)
    sys.stdout.write(report.emit_rows(records, args.format))
    sys.stdout.write("\n")
    sys.stdout.write(comparison.render())
    return 0 if comparison.passed else 1


def cmd_fixture(args, parser) -> int:
    rows = PAPER.serial_rows() if args.table == 1 else PAPER.parallel_rows()
    sys.stdout.write(report.emit_rows(rows, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffbench", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="time the layer grid, CSV on stdout")
    p.add_argument("--input", type=parse_int_list, default=[50], help="input counts, e.g. 50 or 9,36,144")
    p.add_argument("--hidden", type=parse_int_list, default=list(range(20, 201, 20)),
                   help="hidden counts, list or start..end:step (default 20..200:20)")
    p.add_argument("--workers", type=parse_int_list, default=[1, 2], help="worker counts (default 1,2)")
    p.add_argument("--reps", type=int, default=_default_reps(),
                   help=f"timed repetitions per cell (default 31, or ${REPS_ENV})")
    p.add_argument("--warmup", type=int, default=3)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--stat", choices=[s.value for s in bench.AggregateStat], default="median")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--no-pin", action="store_true", help="do not pin workers to CPUs")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("analyze", help="speedup ratio and parallel fraction from two bench CSVs")
    p.add_argument("serial_csv")
    p.add_argument("parallel_csv")
    p.add_argument("--workers", type=int, default=None,
                   help="worker count for the p inversion (default: from the parallel CSV)")
    p.add_argument("--clamp", action="store_true", help="clamp ratios into [1, workers] instead of failing")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reproduce-paper", help="recompute the published ratio and p columns")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--format", choices=["csv", "markdown"], default="markdown")
    p.set_defaults(func=cmd_reproduce_paper)

    p = sub.add_parser("fixture", help="print an embedded timing table as bench CSV")
    p.add_argument("--table", type=int, choices=[1, 2], required=True, help="1 = one core, 2 = two cores")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
