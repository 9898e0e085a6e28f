"""CSV and Markdown output for benchmark rows and speedup records.

Rounding happens only here, on the way out: times to one decimal, ratios and
parallel fractions to two (ties to even). Stored values are never modified.
Fixture comparisons go through :func:`compare_with_fixture` with an explicit
tolerance, never through string equality.
"""

import csv
import io
from dataclasses import dataclass

from .analysis import SpeedupRecord
from .bench import BenchmarkRow
from .errors import CsvSchemaError, DimensionMismatchError, EmptyInputError, InvalidCountError

ROW_HEADER = ("no", "input", "hidden", "operations", "workers", "time_us")
RECORD_HEADER = ("operations", "t_serial_us", "t_parallel_us", "ratio", "p")

_ROW_MD_HEADER = ("No", "Input", "Hidden", "Operations", "Workers", "Time (μs)")
_RECORD_MD_HEADER = ("No", "Operations", "Serial (μs)", "Parallel (μs)", "Ratio", "p")


def fmt_time(value: float) -> str:
    return f"{value:.1f}"


def fmt_ratio(value: float) -> str:
    # str.format rounds the exact binary value, ties to even.
    return f"{value:.2f}"


def _row_cells(no: int, row: BenchmarkRow):
    return (str(no), str(row.input_count), str(row.hidden_count), str(row.operations),
            str(row.worker_count), fmt_time(row.elapsed_micros))


def _record_cells(rec: SpeedupRecord):
    return (str(rec.operations), fmt_time(rec.t_serial), fmt_time(rec.t_parallel),
            fmt_ratio(rec.ratio), fmt_ratio(rec.parallel_fraction))


def _table(items):
    items = list(items)
    if not items:
        raise EmptyInputError("nothing to emit")
    if all(isinstance(x, BenchmarkRow) for x in items):
        return ROW_HEADER, _ROW_MD_HEADER, [_row_cells(i, r) for i, r in enumerate(items, 1)]
    if all(isinstance(x, SpeedupRecord) for x in items):
        return RECORD_HEADER, _RECORD_MD_HEADER, [_record_cells(r) for r in items]
    raise TypeError("expected a list of BenchmarkRow or a list of SpeedupRecord")


def emit_rows(items, format: str = "csv") -> str:
    """Render rows or records as ``csv`` (LF endings, header first) or ``markdown``."""
    csv_header, md_header, body = _table(items)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(body)
        return buf.getvalue()
    if format == "markdown":
        if md_header is _RECORD_MD_HEADER:
            body = [(str(i),) + cells for i, cells in enumerate(body, 1)]
        widths = [max(len(h), *(len(r[c]) for r in body)) for c, h in enumerate(md_header)]
        lines = [
            "| " + " | ".join(h.ljust(w) for h, w in zip(md_header, widths)) + " |",
            "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|",
        ]
        lines += ["| " + " | ".join(v.rjust(w) for v, w in zip(r, widths)) + " |" for r in body]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}; expected 'csv' or 'markdown'")


def _read(text: str, header) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != header:
        raise CsvSchemaError(f"expected header {','.join(header)}, got {reader.fieldnames}")
    rows = list(reader)
    if not rows:
        raise CsvSchemaError("CSV has a header but no data rows")
    return rows


def parse_rows(text: str) -> list[BenchmarkRow]:
    """Inverse of ``emit_rows(rows, "csv")`` for benchmark rows."""
    out = []
    for line_no, rec in enumerate(_read(text, ROW_HEADER), 2):
        try:
            out.append(BenchmarkRow(int(rec["input"]), int(rec["hidden"]), int(rec["operations"]),
                                    int(rec["workers"]), float(rec["time_us"])))
        except (TypeError, ValueError) as exc:
            raise CsvSchemaError(f"line {line_no}: {exc}") from exc
    return out


def parse_records(text: str) -> list[SpeedupRecord]:
    out = []
    for line_no, rec in enumerate(_read(text, RECORD_HEADER), 2):
        try:
            out.append(SpeedupRecord(int(rec["operations"]), float(rec["t_serial_us"]),
                                     float(rec["t_parallel_us"]), float(rec["ratio"]), float(rec["p"])))
        except (TypeError, ValueError) as exc:
            raise CsvSchemaError(f"line {line_no}: {exc}") from exc
    return out


@dataclass(frozen=True)
class ComparisonEntry:
    label: str
    expected: float
    actual: float
    difference: float
    passed: bool


@dataclass(frozen=True)
class ComparisonReport:
    entries: tuple[ComparisonEntry, ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def pass_count(self) -> int:
        return sum(e.passed for e in self.entries)

    def __add__(self, other: "ComparisonReport") -> "ComparisonReport":
        if other.tolerance != self.tolerance:
            raise ValueError("cannot merge reports with different tolerances")
        return ComparisonReport(self.entries + other.entries, self.tolerance)

    def render(self) -> str:
        width = max(len(e.label) for e in self.entries)
        lines = [
            f"{'PASS' if e.passed else 'FAIL'}  {e.label.ljust(width)}  "
            f"expected={e.expected:<8g} actual={e.actual:.6f}  |diff|={e.difference:.6f}"
            for e in self.entries
        ]
        lines.append(f"{self.pass_count}/{len(self.entries)} within ±{self.tolerance:g}")
        return "\n".join(lines) + "\n"


def compare_with_fixture(computed, expected, tolerance: float, labels=None) -> ComparisonReport:
    computed, expected = list(computed), list(expected)
    if len(computed) != len(expected):
        raise DimensionMismatchError("computed vs expected", len(expected), len(computed))
    if not tolerance > 0:
        raise InvalidCountError("tolerance", tolerance, "> 0")
    labels = list(labels) if labels is not None else [f"#{i}" for i in range(1, len(expected) + 1)]
    entries = []
    for label, act, exp in zip(labels, computed, expected):
        diff = abs(act - exp)
        entries.append(ComparisonEntry(label, float(exp), float(act), diff, diff <= tolerance))
    return ComparisonReport(tuple(entries), tolerance)
