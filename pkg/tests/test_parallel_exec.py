import threading

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffbench.errors import InvalidCountError, PlanMismatchError
from ffbench.nn_core import layer_forward_serial, make_random_inputs, make_random_layer
from ffbench.parallel_exec import (
    PartitionPlan,
    WorkerTeam,
    available_cpus,
    caller_pinned,
    layer_forward_parallel,
    partition,
)


def test_twenty_neurons_two_workers():
    assert partition(20, 2).ranges == ((0, 10), (10, 20))


@pytest.mark.parametrize("n", [1, 7, 200])
def test_single_worker_takes_all(n):
    assert partition(n, 1).ranges == ((0, n),)


def test_remainder_goes_to_lowest_workers():
    assert partition(21, 2).ranges == ((0, 11), (11, 21))
    assert partition(10, 4).ranges == ((0, 3), (3, 6), (6, 8), (8, 10))


@pytest.mark.parametrize("n, w", [(5, 0), (5, 6), (0, 1)])
def test_partition_rejects_bad_counts(n, w):
    with pytest.raises(InvalidCountError):
        partition(n, w)


@given(st.integers(1, 512).flatmap(lambda j: st.tuples(st.just(j), st.integers(1, min(j, 64)))))
def test_partition_invariants(args):
    j, w = args
    plan = partition(j, w)
    assert plan.worker_count == w
    covered = [i for a, b in plan.ranges for i in range(a, b)]
    assert covered == list(range(j))
    sizes = [b - a for a, b in plan.ranges]
    assert max(sizes) - min(sizes) <= 1
    assert sizes == sorted(sizes, reverse=True)
    assert partition(j, w) == plan


def test_plan_validation_rejects_gaps_and_skew():
    with pytest.raises(InvalidCountError):
        PartitionPlan(10, ((0, 4), (5, 10)))
    with pytest.raises(InvalidCountError):
        PartitionPlan(10, ((0, 2), (2, 10)))
    with pytest.raises(InvalidCountError):
        PartitionPlan(10, ((0, 5), (5, 9)))


def test_one_worker_plan_equals_serial():
    layer = make_random_layer(13, 9, seed=5)
    x = make_random_inputs(13, seed=5)
    got = layer_forward_parallel(layer, x, partition(9, 1))
    assert got.tobytes() == layer_forward_serial(layer, x).tobytes()


def test_two_workers_fifty_by_twenty_equals_serial():
    layer = make_random_layer(50, 20, seed=42)
    x = make_random_inputs(50, seed=42)
    got = layer_forward_parallel(layer, x, partition(20, 2))
    assert got.tobytes() == layer_forward_serial(layer, x).tobytes()


@pytest.mark.parametrize("workers", [2, 3, 4])
def test_wide_layer_any_worker_count_equals_serial(workers):
    layer = make_random_layer(50, 200, seed=42)
    x = make_random_inputs(50, seed=42)
    got = layer_forward_parallel(layer, x, partition(200, workers))
    assert got.tobytes() == layer_forward_serial(layer, x).tobytes()


def test_plan_layer_mismatch():
    layer = make_random_layer(4, 10, seed=0)
    with pytest.raises(PlanMismatchError):
        layer_forward_parallel(layer, np.zeros(4), partition(12, 2))


def test_team_reuse_and_shutdown():
    layer = make_random_layer(32, 40, seed=9)
    x = make_random_inputs(32, seed=9)
    want = layer_forward_serial(layer, x)
    before = threading.active_count()
    with WorkerTeam(layer, x, partition(40, 4)) as team:
        assert threading.active_count() == before + 3
        for _ in range(50):
            assert team.run().tobytes() == want.tobytes()
    assert threading.active_count() == before
    with pytest.raises(RuntimeError):
        team.run()


def test_each_output_written_once_by_its_owner():
    # Poison the buffer: every slot must be overwritten by exactly the owning range.
    layer = make_random_layer(8, 30, seed=1)
    x = make_random_inputs(8, seed=1)
    with WorkerTeam(layer, x, partition(30, 3)) as team:
        team.out[:] = np.nan
        out = team.run()
    assert np.isfinite(out).all()
    assert out.tobytes() == layer_forward_serial(layer, x).tobytes()


def test_pinning_reported_and_caller_mask_restored():
    before = available_cpus()
    layer = make_random_layer(8, 8, seed=1)
    with WorkerTeam(layer, np.ones(8), partition(8, 2)) as team:
        if len(before) < 2:
            assert team.pinned is False
    assert available_cpus() == before
    with caller_pinned(0) as ok:
        if ok:
            assert available_cpus() == [before[0]]
    assert available_cpus() == before


def test_unpinned_team_still_correct():
    layer = make_random_layer(8, 8, seed=1)
    with WorkerTeam(layer, np.ones(8), partition(8, 2), pin=False) as team:
        assert team.pinned is False
        assert team.run().tobytes() == layer_forward_serial(layer, np.ones(8)).tobytes()


def test_spawn_failure_raises_and_leaves_no_threads(monkeypatch):
    from ffbench.errors import WorkerSpawnError

    real_start = threading.Thread.start
    started = []

    def flaky_start(self):
        if started:
            raise RuntimeError("can't start new thread")
        started.append(self)
        real_start(self)

    monkeypatch.setattr(threading.Thread, "start", flaky_start)
    before = threading.active_count()
    layer = make_random_layer(8, 8, seed=1)
    with pytest.raises(WorkerSpawnError):
        layer_forward_parallel(layer, np.ones(8), partition(8, 3))
    started[0].join(timeout=5)
    assert threading.active_count() == before
