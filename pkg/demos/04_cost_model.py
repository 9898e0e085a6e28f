"""
A linear timing model
=====================

Fitting ``time = intercept + slope * operations`` to each table separates
a fixed per-pass overhead from the per-multiply-accumulate cost. Two cores
halve the slope but not the intercept, which is why the ratio keeps
climbing toward 2 as layers grow.
"""

from ffbench import PAPER, fit_linear_cost, predict_time

one = fit_linear_cost(PAPER.serial_rows())
two = fit_linear_cost(PAPER.parallel_rows())
print(f"one core: {one.intercept_micros:6.1f} us + {one.slope_micros_per_op:.4f} us/op")
print(f"two core: {two.intercept_micros:6.1f} us + {two.slope_micros_per_op:.4f} us/op")
print(f"slope ratio: {one.slope_micros_per_op / two.slope_micros_per_op:.3f}")

for ops in (1000, 10000, 100000):
    t1, t2 = predict_time(one, ops), predict_time(two, ops)
    print(f"{ops:>6} ops: predicted {t1:8.1f} / {t2:8.1f} us -> ratio {t1 / t2:.2f}")
