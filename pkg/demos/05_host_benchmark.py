"""
Timing the same experiment on this machine
==========================================

The grid is re-run on the host: 50 inputs, 20-200 hidden neurons, one and
two workers, median of 31 timed passes after 3 warmups. Absolute times have
nothing to do with a 240 MHz microcontroller. What carries over is the
shape: fixed dispatch overhead matters less as the layer grows. Set
``FFBENCH_REPS`` to shorten the run.
"""

import os

from ffbench import ExperimentConfig, build_speedup_records, emit_rows, fit_linear_cost, run_grid
from ffbench.parallel_exec import available_cpus

reps = int(os.environ.get("FFBENCH_REPS", 31))
rows = run_grid(ExperimentConfig(repetitions=reps))
print(emit_rows(rows, "markdown"))

serial = [r for r in rows if r.worker_count == 1]
parallel = [r for r in rows if r.worker_count == 2]
if len(available_cpus()) < 2:
    print("only one CPU available: the two workers time-share it, expect ratios below 1")
records = build_speedup_records(serial, parallel, clamp=True)
print(emit_rows(records, "markdown"))

model = fit_linear_cost(serial)
print(f"host serial cost: {model.intercept_micros:.2f} us + {model.slope_micros_per_op * 1e3:.3f} ns/op")
