"""Timing harness for single-layer forward passes.

Each sample brackets exactly one forward pass between two reads of a
monotonic microsecond clock (``elapsed = end - start``). Layer generation,
partitioning and helper-thread start-up all happen before the first clock
read. After every pass the output is folded into a CRC sink so the work
is observable.
"""

import enum
import logging
import statistics
import time
import zlib
from dataclasses import dataclass, field

from .errors import EmptyInputError, InvalidCountError
from .nn_core import LayerSpec, check_inputs, make_random_inputs, make_random_layer
from .parallel_exec import WorkerTeam, partition

logger = logging.getLogger(__name__)

_sink = 0


def sink_value() -> int:
    """Running CRC of every output produced under the clock."""
    return _sink


def now_micros() -> int:
    """Monotonic time in whole microseconds (the ``micros()`` analog)."""
    return time.perf_counter_ns() // 1000


class AggregateStat(str, enum.Enum):
    MEDIAN = "median"
    MIN = "min"
    MEAN = "mean"


@dataclass(frozen=True)
class TimingSample:
    elapsed_micros: int
    repetition_index: int

    def __post_init__(self):
        if self.elapsed_micros < 0:
            raise InvalidCountError("elapsed_micros", self.elapsed_micros, ">= 0")


@dataclass(frozen=True)
class BenchmarkRow:
    input_count: int
    hidden_count: int
    operations: int
    worker_count: int
    elapsed_micros: float
    sample_count: int = 1
    pinned: bool = False

    def __post_init__(self):
        if self.operations != self.input_count * self.hidden_count:
            raise InvalidCountError(
                "operations", self.operations, f"== input_count * hidden_count ({self.input_count * self.hidden_count})"
            )
        if self.sample_count < 1:
            raise InvalidCountError("sample_count", self.sample_count, ">= 1")
        if not self.elapsed_micros >= 0:
            raise InvalidCountError("elapsed_micros", self.elapsed_micros, ">= 0")

    @classmethod
    def make(cls, input_count, hidden_count, worker_count, elapsed_micros, **kw) -> "BenchmarkRow":
        return cls(input_count, hidden_count, input_count * hidden_count, worker_count, elapsed_micros, **kw)


def _default_hidden():
    return list(range(20, 201, 20))


@dataclass(frozen=True)
class ExperimentConfig:
    """Benchmark grid; defaults are the 50-input, 20..200-hidden, 1-vs-2 worker sweep."""

    input_counts: list[int] = field(default_factory=lambda: [50])
    hidden_counts: list[int] = field(default_factory=_default_hidden)
    worker_counts: list[int] = field(default_factory=lambda: [1, 2])
    repetitions: int = 31
    warmup: int = 3
    seed: int = 42
    aggregate_stat: AggregateStat = AggregateStat.MEDIAN
    pin: bool = True

    def __post_init__(self):
        object.__setattr__(self, "aggregate_stat", AggregateStat(self.aggregate_stat))
        for name in ("input_counts", "hidden_counts", "worker_counts"):
            values = list(getattr(self, name))
            if not values:
                raise InvalidCountError(name, values, "non-empty")
            if any(int(v) < 1 for v in values):
                raise InvalidCountError(name, values, "all >= 1")
            object.__setattr__(self, name, [int(v) for v in values])
        if self.repetitions < 1:
            raise InvalidCountError("repetitions", self.repetitions, ">= 1")
        if self.warmup < 0:
            raise InvalidCountError("warmup", self.warmup, ">= 0")


def _measure(layer: LayerSpec, inputs, worker_count: int, repetitions: int, warmup: int, pin: bool):
    global _sink
    if repetitions < 1:
        raise InvalidCountError("repetitions", repetitions, ">= 1")
    if warmup < 0:
        raise InvalidCountError("warmup", warmup, ">= 0")
    a = check_inputs(layer, inputs)
    plan = partition(layer.neuron_count, worker_count)
    samples = []
    crc = _sink
    # A one-worker team runs the serial kernel over [0, j) on the calling
    # thread, so both cases pay the same dispatch cost under the clock.
    with WorkerTeam(layer, a, plan, pin=pin) as team:
        pinned = team.pinned
        for _ in range(warmup):
            team.run()
        for rep in range(repetitions):
            start = now_micros()
            out = team.run()
            end = now_micros()
            samples.append(TimingSample(end - start, rep))
            crc = zlib.crc32(out, crc)
    _sink = crc
    return samples, pinned


def time_layer(layer: LayerSpec, inputs, worker_count: int = 1, repetitions: int = 31,
               warmup: int = 3, pin: bool = True) -> list[TimingSample]:
    """Time ``repetitions`` forward passes after ``warmup`` untimed ones.

    ``worker_count == 1`` runs the serial kernel on the calling thread;
    larger counts split the neurons with ``partition`` and run a
    :class:`WorkerTeam`.
    """
    samples, _ = _measure(layer, inputs, worker_count, repetitions, warmup, pin)
    return samples


def aggregate(samples, stat=AggregateStat.MEDIAN) -> float:
    values = [s.elapsed_micros if isinstance(s, TimingSample) else s for s in samples]
    if not values:
        raise EmptyInputError("cannot aggregate an empty sample list")
    stat = AggregateStat(stat)
    if stat is AggregateStat.MEDIAN:
        return float(statistics.median(values))
    if stat is AggregateStat.MIN:
        return float(min(values))
    return float(statistics.fmean(values))


def run_grid(config: ExperimentConfig | None = None) -> list[BenchmarkRow]:
    """Benchmark every (input, hidden, workers) cell; inputs outer, workers inner.

    All worker counts for a given shape time the same seeded layer and inputs.
    """
    config = config or ExperimentConfig()
    rows = []
    for n_in in config.input_counts:
        inputs = make_random_inputs(n_in, config.seed)
        for n_hidden in config.hidden_counts:
            layer = make_random_layer(n_in, n_hidden, config.seed)
            for workers in config.worker_counts:
                samples, pinned = _measure(
                    layer, inputs, workers, config.repetitions, config.warmup, config.pin
                )
                row = BenchmarkRow.make(
                    n_in,
                    n_hidden,
                    workers,
                    aggregate(samples, config.aggregate_stat),
                    sample_count=len(samples),
                    pinned=pinned,
                )
                logger.debug("%s", row)
                rows.append(row)
    return rows
