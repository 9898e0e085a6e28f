"""
Dense pre-activation in float32
===============================

A neuron's pre-activation is its bias plus the dot product of its weights
with the inputs. Here it is computed in float32, bias first and then one
term at a time in input order, which is the arithmetic a microcontroller
without vector units performs.
"""

import numpy as np

from ffbench import layer_forward_serial, make_random_inputs, make_random_layer, preactivation

# A single neuron: 0.5 + 1 * 0.25 + 2 * (-0.5)
print("single neuron:", preactivation([1, 2], [0.25, -0.5], 0.5))

# Layers are seeded, so the same seed gives the same weights on any machine.
layer = make_random_layer(input_count=50, neuron_count=20, seed=42)
x = make_random_inputs(50, seed=42)
z = layer_forward_serial(layer, x)
print("layer shape (neurons, inputs):", layer.weights.shape, "-> output", z.shape)
print("first outputs:", np.round(z[:5], 4))

# The fixed summation order differs from BLAS, which reorders for speed. The
# two agree only to float32 rounding:
blas = layer.weights @ x.values + layer.biases
print("max |ordered - BLAS|:", float(np.max(np.abs(z - blas))))

# A zero input vector returns the biases bit for bit.
assert layer_forward_serial(layer, np.zeros(50)).tobytes() == layer.biases.tobytes()
