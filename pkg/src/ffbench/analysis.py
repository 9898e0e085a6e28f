"""Speedup ratios, Amdahl's law and a linear timing model.

Amdahl's law, ``speedup = 1 / ((1 - f) + f / s)``, covers both the general
"fraction f enhanced by factor s" form and the multicore form where ``f`` is
the parallel fraction ``p`` and ``s`` the core count; :func:`amdahl_speedup`
serves both. Solving for ``p`` given a measured ratio ``S`` on ``s`` workers
gives ``p = s (S - 1) / (S (s - 1))``, i.e. ``2 (S - 1) / S`` for two cores.

Ratios and fractions are returned unrounded. Two-decimal rounding is left to
the report layer.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCountError, OperationSetMismatchError, SpeedupDomainError


@dataclass(frozen=True)
class SpeedupRecord:
    operations: int
    t_serial: float
    t_parallel: float
    ratio: float
    parallel_fraction: float


@dataclass(frozen=True)
class CostModel:
    intercept_micros: float
    slope_micros_per_op: float


def speedup_ratio(t_serial: float, t_parallel: float) -> float:
    if not (t_serial > 0 and math.isfinite(t_serial)):
        raise SpeedupDomainError(f"serial time must be positive, got {t_serial}", t_serial)
    if not (t_parallel > 0 and math.isfinite(t_parallel)):
        raise SpeedupDomainError(f"parallel time must be positive, got {t_parallel}", t_parallel)
    return t_serial / t_parallel


def amdahl_speedup(fraction: float, enhancement: float) -> float:
    """Overall speedup when ``fraction`` of the run is sped up ``enhancement`` times."""
    if not 0.0 <= fraction <= 1.0:
        raise SpeedupDomainError(f"fraction must be in [0, 1], got {fraction}", fraction)
    if not enhancement >= 1.0:
        raise SpeedupDomainError(f"enhancement must be >= 1, got {enhancement}", enhancement)
    if fraction == 0.0:
        return 1.0
    if fraction == 1.0:
        return float(enhancement)
    return 1.0 / ((1.0 - fraction) + fraction / enhancement)


def parallel_fraction(ratio: float, worker_count: int, clamp: bool = False) -> float:
    """Parallel fraction ``p`` that makes Amdahl's law yield ``ratio`` on ``worker_count`` workers.

    Ratios outside ``[1, worker_count]`` (sub-unit or super-linear speedup)
    raise :class:`SpeedupDomainError` unless ``clamp`` is set, in which case the
    ratio is first clamped into the band.
    """
    if worker_count < 2:
        raise InvalidCountError("worker_count", worker_count, ">= 2")
    if not math.isfinite(ratio):
        raise SpeedupDomainError(f"ratio must be finite, got {ratio}", ratio)
    if ratio < 1.0 or ratio > worker_count:
        if not clamp:
            kind = "sub-unit" if ratio < 1.0 else "super-linear"
            raise SpeedupDomainError(
                f"{kind} speedup {ratio} outside [1, {worker_count}]; pass clamp=True to clamp",
                ratio,
            )
        ratio = min(max(ratio, 1.0), float(worker_count))
    if ratio == 1.0:
        return 0.0
    if ratio == worker_count:
        return 1.0
    s = float(worker_count)
    return s * (ratio - 1.0) / (ratio * (s - 1.0))


def _times_by_operations(rows, label):
    out = {}
    for row in rows:
        if row.operations in out:
            raise InvalidCountError(f"{label} rows", row.operations, "one row per operations value")
        out[row.operations] = row
    return out


def build_speedup_records(serial_rows, parallel_rows, worker_count: int | None = None,
                          clamp: bool = False) -> list[SpeedupRecord]:
    """Pair serial and parallel rows by operation count and derive ratio and ``p``.

    ``worker_count`` defaults to the parallel rows' own ``worker_count``
    (2 if they all carry 1, as when comparing a file with itself).
    """
    serial = _times_by_operations(serial_rows, "serial")
    parallel = _times_by_operations(parallel_rows, "parallel")
    if serial.keys() != parallel.keys():
        raise OperationSetMismatchError(serial.keys() - parallel.keys(), parallel.keys() - serial.keys())
    records = []
    for ops in sorted(serial):
        s_row, p_row = serial[ops], parallel[ops]
        workers = worker_count or max(p_row.worker_count, 2)
        ratio = speedup_ratio(s_row.elapsed_micros, p_row.elapsed_micros)
        records.append(
            SpeedupRecord(
                operations=ops,
                t_serial=float(s_row.elapsed_micros),
                t_parallel=float(p_row.elapsed_micros),
                ratio=ratio,
                parallel_fraction=parallel_fraction(ratio, workers, clamp=clamp),
            )
        )
    return records


def fit_linear_cost(rows) -> CostModel:
    """Ordinary least squares of ``elapsed_micros`` on ``operations``."""
    x = np.array([r.operations for r in rows], dtype=np.float64)
    y = np.array([r.elapsed_micros for r in rows], dtype=np.float64)
    if np.unique(x).size < 2:
        raise InvalidCountError("distinct operations values", int(np.unique(x).size), ">= 2")
    design = np.column_stack([np.ones_like(x), x])
    (intercept, slope), *_ = np.linalg.lstsq(design, y, rcond=None)
    return CostModel(float(intercept), float(slope))


def predict_time(model: CostModel, operations: int) -> float:
    if operations < 0:
        raise InvalidCountError("operations", operations, ">= 0")
    return model.intercept_micros + model.slope_micros_per_op * operations
