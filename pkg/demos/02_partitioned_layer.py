"""
Splitting a layer across workers
================================

The hidden layer is cut into contiguous neuron ranges, one per worker. With
two workers and 20 neurons the first worker evaluates neurons 0-9 and the
second 10-19. Every neuron is still summed in the same order, so the result
does not depend on the split.
"""

from ffbench import layer_forward_parallel, layer_forward_serial, make_random_inputs, make_random_layer, partition
from ffbench.parallel_exec import WorkerTeam, available_cpus

print("20 neurons, 2 workers:", partition(20, 2).ranges)
print("21 neurons, 2 workers:", partition(21, 2).ranges)
print("10 neurons, 4 workers:", partition(10, 4).ranges)

layer = make_random_layer(50, 200, seed=42)
x = make_random_inputs(50, seed=42)
serial = layer_forward_serial(layer, x)
for workers in (1, 2, 3, 4, 8):
    parallel = layer_forward_parallel(layer, x, partition(200, workers))
    print(f"{workers} workers bitwise equal to serial:", parallel.tobytes() == serial.tobytes())

# For repeated passes keep the helper threads alive. Each worker is pinned to
# its own CPU when the process has enough of them.
print("CPUs available:", available_cpus())
with WorkerTeam(layer, x, partition(200, 2)) as team:
    for _ in range(100):
        out = team.run()
    print("pinned:", team.pinned, "| equal:", out.tobytes() == serial.tobytes())
