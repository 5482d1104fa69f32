import numpy as np
import pytest

from pmssc.cluster_cost import (
    RunningClusterStats,
    costs_ending_at,
    costs_from_left,
    extend_left,
    extend_right,
    inner_outlier_column,
    medoid_costs_ending_at,
    merge,
    one_inner_outlier_cost,
    shrink,
    singleton,
)
from pmssc.core import DomainError, Instance1D, centroid_cost, medoid_cost


def _weighted(seed, n=None):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(2, 65))
    return Instance1D.from_arrays(rng.normal(0, 10, n), 1, 0, weights=rng.uniform(0.1, 5, n))


def test_two_point_update():
    s = extend_right(singleton(1.0, 10.0), 3.0, 1.0)
    assert s.v == 11.0
    assert s.b == pytest.approx(13 / 11)
    assert s.c == pytest.approx(40 / 11)


def test_three_unit_points():
    s = extend_right(extend_right(singleton(0.0), 1.0), 2.0)
    assert (s.v, s.b, s.c) == (3.0, 1.0, 2.0)


def test_extend_left_matches_right():
    a = extend_left(extend_left(singleton(2.0), 1.0), 0.0)
    assert a.c == pytest.approx(2.0) and a.b == pytest.approx(1.0)


def test_shrink_inverts_extend():
    s = extend_right(singleton(1.0, 2.0), 4.0, 3.0)
    back = shrink(s, 4.0, 3.0)
    assert back.v == pytest.approx(2.0)
    assert back.b == pytest.approx(1.0)
    assert back.c == pytest.approx(0.0, abs=1e-12)


def test_shrink_to_empty_rejected():
    with pytest.raises(DomainError):
        shrink(singleton(1.0), 1.0)


def test_merge_matches_scratch():
    a = extend_right(singleton(0.0), 1.0)
    b = extend_right(singleton(5.0, 2.0), 6.0)
    m = merge(a, b)
    assert m.c == pytest.approx(centroid_cost([0, 1, 5, 6], [1, 1, 2, 1])[1])


def test_singleton_needs_positive_weight():
    with pytest.raises(DomainError):
        singleton(0.0, 0.0)


@pytest.mark.parametrize("seed", range(50))
def test_recurrences_match_scratch(seed):
    inst = _weighted(seed)
    x, w, N = inst.x, inst.weights, inst.N
    for i in range(0, N, max(1, N // 8)):
        s = singleton(x[i], w[i])
        for j in range(i + 1, N):
            s = extend_right(s, x[j], w[j])
            ref = centroid_cost(x[i : j + 1], w[i : j + 1])[1]
            assert abs(s.c - ref) <= 1e-9 * max(1.0, ref)
    for j in range(N - 1, -1, -max(1, N // 8)):
        s = singleton(x[j], w[j])
        for i in range(j - 1, -1, -1):
            s = extend_left(s, x[i], w[i])
            ref = centroid_cost(x[i : j + 1], w[i : j + 1])[1]
            assert abs(s.c - ref) <= 1e-9 * max(1.0, ref)


@pytest.mark.parametrize("seed", range(10))
def test_vectorized_column_matches_scalar_loop(seed):
    inst = _weighted(seed)
    left = costs_from_left(inst)
    for j in range(inst.N):
        col = costs_ending_at(inst, j)
        assert abs(col[0] - left[j]) <= 1e-12 * max(1.0, left[j])
        ref = [centroid_cost(inst.x[i : j + 1], inst.weights[i : j + 1])[1] for i in range(j + 1)]
        np.testing.assert_allclose(col, ref, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_medoid_column_matches_scan(seed):
    inst = _weighted(seed, n=20)
    for j in range(inst.N):
        col = medoid_costs_ending_at(inst, j)
        for i in range(j + 1):
            ref = medoid_cost(inst.x[i : j + 1], inst.weights[i : j + 1])[1]
            assert col[i] == pytest.approx(ref, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_inner_outlier_column(seed):
    inst = _weighted(seed, n=15)
    x, w = inst.x, inst.weights
    for j in range(inst.N):
        best, drop = inner_outlier_column(x, w, j)
        full = costs_ending_at(inst, j)
        assert np.isinf(best[j])
        for i in range(j):
            cost, where = one_inner_outlier_cost(inst, i, j)
            assert best[i] == pytest.approx(cost, rel=1e-9, abs=1e-9)
            assert best[i] <= full[i] + 1e-9
            keep = [r for r in range(i, j + 1) if r != where]
            assert cost == pytest.approx(centroid_cost(x[keep], w[keep])[1], rel=1e-9, abs=1e-9)


def test_one_inner_outlier_counter_example(counter_example):
    x, w = counter_example
    inst = Instance1D.from_arrays(x, 1, 1, weights=w)
    cost, where = one_inner_outlier_cost(inst, 0, 2)
    # dropping x=1 leaves 1000 at 2 and 1 at 3: cost 1000/1001, below 40/11
    assert where == 0 and cost == pytest.approx(1000 / 1001)


def test_one_inner_outlier_needs_range():
    inst = Instance1D.from_arrays([0.0, 1.0], 1, 0)
    with pytest.raises(DomainError):
        one_inner_outlier_cost(inst, 1, 1)


def test_costs_ending_at_bounds():
    inst = Instance1D.from_arrays([0.0, 1.0], 1, 0)
    with pytest.raises(DomainError):
        costs_ending_at(inst, 2)


def test_stats_are_frozen():
    s = RunningClusterStats(1.0, 0.0, 0.0)
    with pytest.raises(AttributeError):
        s.c = 1.0
