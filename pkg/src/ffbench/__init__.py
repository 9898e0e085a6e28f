"""Parallel feed-forward microbenchmarks and Amdahl's-law analysis."""

from .analysis import (
    CostModel,
    SpeedupRecord,
    amdahl_speedup,
    build_speedup_records,
    fit_linear_cost,
    parallel_fraction,
    predict_time,
    speedup_ratio,
)
from .bench import (
    AggregateStat,
    BenchmarkRow,
    ExperimentConfig,
    TimingSample,
    aggregate,
    now_micros,
    run_grid,
    time_layer,
)
from .errors import FFBenchError
from .fixtures import PAPER, PaperFixture
from .nn_core import (
    InputVector,
    LayerSpec,
    layer_forward_serial,
    make_random_inputs,
    make_random_layer,
    preactivation,
)
from .parallel_exec import PartitionPlan, WorkerTeam, layer_forward_parallel, partition
from .report import ComparisonReport, compare_with_fixture, emit_rows, parse_records, parse_rows

__version__ = "0.1.0"
