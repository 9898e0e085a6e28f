"""Compiled kernels shared by the serial and parallel paths.

Both paths call :func:`forward_range`, so a neuron's float32 summation
(bias first, then inputs in ascending index order) is the same instruction
sequence whichever thread evaluates it. No ``fastmath``: reassociation or
FMA contraction would break bitwise agreement with the scalar oracle.

The worker team below is a spin barrier. Helper threads sit in compiled
code (GIL released) polling a generation counter with acquire loads; the
caller publishes a new generation with a release store, computes its own
neuron range, then waits for every helper's done counter. One forward pass
therefore costs one Python-to-native call plus a few cache-line transfers.
"""

import ctypes
import ctypes.util

import numpy as np
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

# Control block layout: one 128-byte line per worker so counters written by
# different threads never share a cache line.
CTL_STRIDE = 16
CTL_GENERATION = 0
CTL_DONE = 1
CTL_STOP = 2

_libc = ctypes.CDLL(ctypes.util.find_library("c") or None, use_errno=True)
_sched_yield = _libc.sched_yield
_sched_yield.restype = ctypes.c_int
_sched_yield.argtypes = []


@intrinsic
def _load_acquire(typingctx, arr, idx):
    if not (isinstance(arr, types.Array) and arr.dtype == types.int64):
        return None
    sig = types.int64(arr, idx)

    def codegen(context, builder, sig, args):
        aryty, _ = sig.args
        ary = context.make_array(aryty)(context, builder, args[0])
        ptr = cgutils.get_item_pointer(
            context, builder, aryty, ary, [args[1]], wraparound=False
        )
        return builder.load_atomic(ptr, "acquire", 8)

    return sig, codegen


@intrinsic
def _store_release(typingctx, arr, idx, val):
    if not (isinstance(arr, types.Array) and arr.dtype == types.int64):
        return None
    sig = types.void(arr, idx, types.int64)

    def codegen(context, builder, sig, args):
        aryty, _, valty = sig.args
        ary = context.make_array(aryty)(context, builder, args[0])
        ptr = cgutils.get_item_pointer(
            context, builder, aryty, ary, [args[1]], wraparound=False
        )
        value = context.cast(builder, args[2], valty, types.int64)
        builder.store_atomic(value, ptr, "release", 8)
        return context.get_dummy_value()

    return sig, codegen


@njit(nogil=True, cache=True)
def forward_range(weights, biases, inputs, out, start, stop):
    n = inputs.shape[0]
    for k in range(start, stop):
        acc = biases[k]
        for i in range(n):
            acc += inputs[i] * weights[k, i]
        out[k] = acc


@njit(nogil=True, cache=True)
def dot_row(inputs, weight_row, bias):
    acc = bias
    for i in range(inputs.shape[0]):
        acc += inputs[i] * weight_row[i]
    return acc


# Not cached: numba cannot cache functions that call ctypes pointers.
@njit(nogil=True)
def team_worker_loop(ctl, slot, weights, biases, inputs, out, start, stop):
    """Body of helper ``slot``; returns once the stop flag is raised."""
    base = slot * CTL_STRIDE
    # Generations start at 1, so a dispatch issued before this thread got
    # scheduled is still observed.
    seen = 0
    while True:
        gen = _load_acquire(ctl, base + CTL_GENERATION)
        if gen == seen:
            _sched_yield()
            continue
        if _load_acquire(ctl, base + CTL_STOP) != 0:
            _store_release(ctl, base + CTL_DONE, gen)
            return
        forward_range(weights, biases, inputs, out, start, stop)
        seen = gen
        _store_release(ctl, base + CTL_DONE, gen)


# Not cached: numba cannot cache functions that call ctypes pointers.
@njit(nogil=True)
def team_dispatch(ctl, n_slots, gen, weights, biases, inputs, out, start, stop):
    """Release helpers 1..n_slots-1 at ``gen``, run slot 0 inline, then join."""
    for s in range(1, n_slots):
        _store_release(ctl, s * CTL_STRIDE + CTL_GENERATION, gen)
    forward_range(weights, biases, inputs, out, start, stop)
    for s in range(1, n_slots):
        while _load_acquire(ctl, s * CTL_STRIDE + CTL_DONE) != gen:
            _sched_yield()


@njit(nogil=True, cache=True)
def team_stop(ctl, n_slots, gen):
    for s in range(1, n_slots):
        _store_release(ctl, s * CTL_STRIDE + CTL_STOP, 1)
        _store_release(ctl, s * CTL_STRIDE + CTL_GENERATION, gen)


def new_control_block(n_slots: int) -> np.ndarray:
    return np.zeros(n_slots * CTL_STRIDE, dtype=np.int64)
