"""
Speedup ratio and parallel fraction from the ESP32 measurements
===============================================================

The embedded fixtures are single-core and dual-core pre-activation times
measured on an ESP32 (Xtensa LX6, 50 inputs, 20-200 hidden neurons). From
them we derive the speedup ratio ``S = t1 / t2`` and, by inverting
Amdahl's law for two cores, the parallel fraction ``p = 2 (S - 1) / S``.
"""

from ffbench import PAPER, amdahl_speedup, build_speedup_records, compare_with_fixture, emit_rows

records = build_speedup_records(PAPER.serial_rows(), PAPER.parallel_rows())
print(emit_rows(records, "markdown"))

# The printed columns are rounded inconsistently (966/547 = 1.766 appears as
# 1.76), so comparisons use a +-0.01 tolerance rather than string equality.
report = compare_with_fixture([r.ratio for r in records], PAPER.expected_ratios, 0.01,
                              [f"ratio @ {r.operations}" for r in records])
report += compare_with_fixture([r.parallel_fraction for r in records], PAPER.expected_p, 0.01,
                               [f"p @ {r.operations}" for r in records])
print(report.render())

# Going the other way: p = 0.68 on two cores predicts S of about 1.515.
print("amdahl_speedup(0.68, 2) =", round(amdahl_speedup(0.68, 2), 4))

# Ceiling on speedup for the largest layer if it ran on more cores.
p = records[-1].parallel_fraction
for cores in (2, 4, 8, 16):
    print(f"p={p:.3f}, {cores:2d} cores -> {amdahl_speedup(p, cores):.2f}x")
