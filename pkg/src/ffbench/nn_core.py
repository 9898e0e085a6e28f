"""Dense pre-activation layer: ``z_k = b_k + sum_i a_i * w_ki`` in float32.

Accumulation starts from the bias and adds terms in ascending input index,
rounding to float32 after every multiply and every add. That fixed order is
what lets the partitioned parallel path reproduce the serial output bit for
bit. No activation function is applied.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, InvalidCountError, NonFiniteValueError

DTYPE = np.float32
_SEED_MASK = (1 << 64) - 1


def _as_f32_vector(values, what: str) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=DTYPE)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{what} must be 1-D; ndim", 1, arr.ndim)
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise NonFiniteValueError(what, int(bad[0]))
    return arr


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class InputVector:
    """Activations ``a_i`` feeding a layer. Stored as a read-only float32 array."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_f32_vector(self.values, "inputs")
        if arr.size < 1:
            raise InvalidCountError("input length", 0, ">= 1")
        if arr is self.values:
            arr = arr.copy()
        object.__setattr__(self, "values", _readonly(arr))

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class LayerSpec:
    """One dense layer: ``weights`` has shape (neuron_count, input_count)."""

    weights: np.ndarray
    biases: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=DTYPE, order="C", copy=True)
        if w.ndim != 2:
            raise DimensionMismatchError("weights must be 2-D; ndim", 2, w.ndim)
        j, n = w.shape
        if n < 1:
            raise InvalidCountError("input_count", n, ">= 1")
        if j < 1:
            raise InvalidCountError("neuron_count", j, ">= 1")
        bad = np.argwhere(~np.isfinite(w))
        if bad.size:
            raise NonFiniteValueError("weights", tuple(int(x) for x in bad[0]))
        b = _as_f32_vector(self.biases, "biases").copy()
        if b.shape[0] != j:
            raise DimensionMismatchError("biases vs neuron_count", j, b.shape[0])
        object.__setattr__(self, "weights", _readonly(w))
        object.__setattr__(self, "biases", _readonly(b))

    @property
    def input_count(self) -> int:
        return self.weights.shape[1]

    @property
    def neuron_count(self) -> int:
        return self.weights.shape[0]

    @property
    def operations(self) -> int:
        return self.input_count * self.neuron_count

    def equals(self, other: "LayerSpec") -> bool:
        """Bitwise equality of weights and biases."""
        return (
            self.weights.shape == other.weights.shape
            and self.weights.tobytes() == other.weights.tobytes()
            and self.biases.tobytes() == other.biases.tobytes()
        )


def as_inputs(inputs) -> np.ndarray:
    """Validated read-only float32 array from an :class:`InputVector` or array-like."""
    if isinstance(inputs, InputVector):
        return inputs.values
    return InputVector(inputs).values


def check_inputs(layer: LayerSpec, inputs) -> np.ndarray:
    a = as_inputs(inputs)
    if a.shape[0] != layer.input_count:
        raise DimensionMismatchError("inputs vs layer.input_count", layer.input_count, a.shape[0])
    return a


def preactivation(inputs, weight_row, bias) -> float:
    """Single-neuron pre-activation ``bias + sum(inputs * weight_row)``.

    Raises :class:`DimensionMismatchError` when the vectors differ in length
    and :class:`NonFiniteValueError` naming the first non-finite index.
    """
    a = as_inputs(inputs)
    w = _as_f32_vector(weight_row, "weight_row")
    if a.shape[0] != w.shape[0]:
        raise DimensionMismatchError("inputs vs weight_row", a.shape[0], w.shape[0])
    b = np.asarray(bias, dtype=DTYPE)
    if not np.isfinite(b):
        raise NonFiniteValueError("bias", 0)
    return float(_kernels.dot_row(a, w, DTYPE(b)))


def layer_forward_serial(layer: LayerSpec, inputs, out: np.ndarray | None = None) -> np.ndarray:
    """Evaluate every neuron of ``layer`` in index order on the calling thread."""
    a = check_inputs(layer, inputs)
    if out is None:
        out = np.empty(layer.neuron_count, dtype=DTYPE)
    _kernels.forward_range(layer.weights, layer.biases, a, out, 0, layer.neuron_count)
    return out


def make_random_layer(input_count: int, neuron_count: int, seed: int) -> LayerSpec:
    """Seeded layer with weights then biases drawn uniformly from [-1, 1).

    Uses numpy's PCG64 bit generator, whose stream is fixed across numpy
    versions and platforms. Float32 draws are ``k * 2**-24`` for integer
    ``k``, so ``2*x - 1`` is exact and never reaches 1.
    """
    if int(input_count) < 1:
        raise InvalidCountError("input_count", input_count, ">= 1")
    if int(neuron_count) < 1:
        raise InvalidCountError("neuron_count", neuron_count, ">= 1")
    rng = np.random.Generator(np.random.PCG64(int(seed) & _SEED_MASK))
    two, one = DTYPE(2), DTYPE(1)
    w = rng.random((neuron_count, input_count), dtype=DTYPE) * two - one
    b = rng.random(neuron_count, dtype=DTYPE) * two - one
    return LayerSpec(w, b)


def make_random_inputs(input_count: int, seed: int) -> InputVector:
    """Seeded input vector, uniform on [-1, 1), independent of the layer stream."""
    if int(input_count) < 1:
        raise InvalidCountError("input_count", input_count, ">= 1")
    rng = np.random.Generator(np.random.PCG64([int(seed) & _SEED_MASK, 1]))
    return InputVector(rng.random(input_count, dtype=DTYPE) * DTYPE(2) - DTYPE(1))
