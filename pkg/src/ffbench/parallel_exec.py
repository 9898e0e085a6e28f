"""Contiguous neuron partitioning and concurrent evaluation of one layer.

Worker ``k`` owns the half-open neuron range ``plan.ranges[k]``. With two
workers on a 20-neuron layer the first evaluates neurons 0..9 and the second
10..19. Because each neuron is evaluated whole by the shared kernel, the
parallel output equals the serial one bitwise for every plan.

Worker 0 is the calling thread; workers 1..W-1 are helper threads. Each
worker is pinned to the k-th CPU of the process affinity mask when the mask
has at least W CPUs. Otherwise, or if the OS refuses, the team runs unpinned
and reports ``pinned = False``.
"""

import contextlib
import logging
import os
import threading
import weakref
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidCountError, PlanMismatchError, WorkerSpawnError
from .nn_core import DTYPE, LayerSpec, check_inputs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionPlan:
    total_neurons: int
    ranges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "ranges", tuple((int(a), int(b)) for a, b in self.ranges))
        if self.total_neurons < 1:
            raise InvalidCountError("total_neurons", self.total_neurons, ">= 1")
        if not self.ranges:
            raise InvalidCountError("ranges", 0, "at least one range")
        cursor = 0
        for start, stop in self.ranges:
            if start != cursor or stop <= start:
                raise InvalidCountError(
                    "ranges", self.ranges, "non-empty, contiguous and ascending from 0"
                )
            cursor = stop
        if cursor != self.total_neurons:
            raise InvalidCountError("ranges", self.ranges, f"cover [0, {self.total_neurons})")
        sizes = [b - a for a, b in self.ranges]
        if max(sizes) - min(sizes) > 1:
            raise InvalidCountError("ranges", self.ranges, "size skew <= 1")

    @property
    def worker_count(self) -> int:
        return len(self.ranges)


def partition(neuron_count: int, worker_count: int) -> PartitionPlan:
    """Split ``neuron_count`` neurons into ``worker_count`` contiguous ranges.

    The ``neuron_count % worker_count`` leftover neurons go one each to the
    lowest-indexed workers.

    >>> partition(20, 2).ranges
    ((0, 10), (10, 20))
    >>> partition(21, 2).ranges
    ((0, 11), (11, 21))
    """
    if worker_count < 1:
        raise InvalidCountError("worker_count", worker_count, ">= 1")
    if neuron_count < 1:
        raise InvalidCountError("neuron_count", neuron_count, ">= 1")
    if worker_count > neuron_count:
        raise InvalidCountError(
            "worker_count", worker_count, f"<= neuron_count ({neuron_count}); no empty ranges"
        )
    base, extra = divmod(neuron_count, worker_count)
    ranges = []
    start = 0
    for k in range(worker_count):
        stop = start + base + (1 if k < extra else 0)
        ranges.append((start, stop))
        start = stop
    return PartitionPlan(neuron_count, tuple(ranges))


def available_cpus() -> list[int]:
    if hasattr(os, "sched_getaffinity"):
        return sorted(os.sched_getaffinity(0))
    return list(range(os.cpu_count() or 1))


def _pin_current_thread(cpu: int) -> bool:
    # On Linux pid 0 targets the calling thread, not the whole process.
    try:
        os.sched_setaffinity(0, {cpu})
    except (AttributeError, OSError) as exc:
        logger.debug("affinity to cpu %d refused: %s", cpu, exc)
        return False
    return True


@contextlib.contextmanager
def caller_pinned(cpu_index: int = 0, enabled: bool = True):
    """Pin the calling thread to the ``cpu_index``-th available CPU for the block.

    Yields whether pinning took effect. The previous mask is restored on exit.
    """
    if not enabled or not hasattr(os, "sched_getaffinity"):
        yield False
        return
    previous = os.sched_getaffinity(0)
    cpus = available_cpus()
    ok = _pin_current_thread(cpus[cpu_index % len(cpus)])
    try:
        yield ok
    finally:
        if ok:
            try:
                os.sched_setaffinity(0, previous)
            except OSError:
                logger.warning("could not restore caller affinity %s", sorted(previous))


def _stop_team(ctl, n_slots, gen, threads):
    _kernels.team_stop(ctl, n_slots, gen)
    for t in threads:
        t.join()


class WorkerTeam:
    """Helpers bound to one (layer, inputs, plan) that run forward passes on demand.

    Building the team spawns and pins the threads; :meth:`run` then costs a
    single dispatch. Use as a context manager, or call :meth:`close`.

    The output buffer is reused by every :meth:`run`; copy it if you need to
    keep a result across calls.
    """

    def __init__(self, layer: LayerSpec, inputs, plan: PartitionPlan, pin: bool = True):
        if plan.total_neurons != layer.neuron_count:
            raise PlanMismatchError(plan.total_neurons, layer.neuron_count)
        self.layer = layer
        self.inputs = check_inputs(layer, inputs)
        self.plan = plan
        self.out = np.empty(layer.neuron_count, dtype=DTYPE)
        self._n = plan.worker_count
        self._ctl = _kernels.new_control_block(self._n)
        self._gen = 0
        self._threads: list[threading.Thread] = []
        self._closed = False

        cpus = available_cpus()
        want_pin = pin and len(cpus) >= self._n
        pin_results = [False] * self._n
        ready = threading.Barrier(self._n) if self._n > 1 else None

        # The helper closure must not capture self, or the finalizer never runs.
        ctl, out, a = self._ctl, self.out, self.inputs

        def helper(slot: int):
            if want_pin:
                pin_results[slot] = _pin_current_thread(cpus[slot])
            try:
                ready.wait()
            except threading.BrokenBarrierError:
                return
            start, stop = plan.ranges[slot]
            _kernels.team_worker_loop(ctl, slot, layer.weights, layer.biases, a, out, start, stop)

        for slot in range(1, self._n):
            t = threading.Thread(target=helper, args=(slot,), name=f"ffbench-worker-{slot}", daemon=True)
            try:
                t.start()
            except RuntimeError as exc:
                if ready is not None:
                    ready.abort()
                _stop_team(self._ctl, self._n, 1, self._threads)
                raise WorkerSpawnError(f"could not start worker {slot}: {exc}") from exc
            self._threads.append(t)

        self._caller_pin = caller_pinned(0, enabled=want_pin)
        pin_results[0] = self._caller_pin.__enter__()
        if ready is not None:
            ready.wait()
        self.pinned = want_pin and all(pin_results)
        self._finalizer = weakref.finalize(
            self, _stop_team, self._ctl, self._n, np.iinfo(np.int64).max, list(self._threads)
        )

    @property
    def worker_count(self) -> int:
        return self._n

    def run(self) -> np.ndarray:
        """One forward pass across all workers; returns after every worker finishes."""
        if self._closed:
            raise RuntimeError("WorkerTeam is closed")
        self._gen += 1
        start, stop = self.plan.ranges[0]
        _kernels.team_dispatch(
            self._ctl,
            self._n,
            self._gen,
            self.layer.weights,
            self.layer.biases,
            self.inputs,
            self.out,
            start,
            stop,
        )
        return self.out

    def close(self):
        if self._closed:
            return
        self._closed = True
        self._finalizer()
        self._caller_pin.__exit__(None, None, None)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def layer_forward_parallel(layer: LayerSpec, inputs, plan: PartitionPlan) -> np.ndarray:
    """Evaluate ``layer`` with one worker per range of ``plan`` and join.

    Spawns the helpers for this call only; for repeated passes over the same
    layer build a :class:`WorkerTeam` once and call ``run``.
    """
    with WorkerTeam(layer, inputs, plan) as team:
        return team.run().copy()
