"""Reference implementations that share no code with the package.

``brute_layer`` rounds to float32 with ``struct`` after every multiply and
add. Products of two float32 values are exact in a double, and rounding a
double sum of two float32 values to float32 gives the correctly rounded
float32 sum (53 >= 2*24 + 2), so this matches true float32 arithmetic.
"""

import struct
from fractions import Fraction

_F32 = struct.Struct("<f")


def f32(x: float) -> float:
    return _F32.unpack(_F32.pack(x))[0]


def brute_dot(inputs, weights, bias) -> float:
    acc = f32(float(bias))
    for a, w in zip(inputs, weights):
        acc = f32(acc + f32(float(a) * float(w)))
    return acc


def brute_layer(weights, biases, inputs) -> list[float]:
    a = [float(x) for x in inputs]
    return [brute_dot(a, [float(w) for w in row], b) for row, b in zip(weights, biases)]


def exact_least_squares(xs, ys):
    """(slope, intercept) as Fractions from the normal equations."""
    n = len(xs)
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return slope, (sy - slope * sx) / n
