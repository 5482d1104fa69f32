"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import statistics
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from helpers import is_interval_solution, random_sweep, rel_close  # noqa: E402

from pmssc.cluster_cost import extend_left, extend_right, singleton  # noqa: E402
from pmssc.core import Instance1D, centroid_cost  # noqa: E402
from pmssc.dp import (  # noqa: E402
    solve_budgeted,
    solve_medoids,
    solve_unweighted,
    solve_weighted_heuristic,
    tradeoff_table,
)
from pmssc.heuristics import ProjectionSpec, solve_projected  # noqa: E402
from pmssc.model_export import build_extended, minimize_extended  # noqa: E402
from pmssc.oracle import OracleConfig, brute_force, enumerate_optima  # noqa: E402
from pmssc.special_cases import solve_k1_unweighted, solve_k1_weighted_m1  # noqa: E402

RESULTS = []
SWEEP = random_sweep(2024, 200)
COUNTER_X = np.array([1.0, 2.0, 3.0, 100.0, 101.0])
COUNTER_W = np.array([10.0, 1000.0, 1.0, 100.0, 1.0])


def report(tag, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {tag}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _inst(x, K, M, **kw):
    return Instance1D.from_arrays(np.asarray(x, dtype=float), K, M, **kw)


def test_c01_oracle_unweighted():
    t0 = time.perf_counter()
    bad = [s for s, (x, K, M) in enumerate(SWEEP)
           if not rel_close(solve_unweighted(_inst(x, K, M))[0].total_cost, brute_force(x, K, M).total_cost, 1e-6)]
    dt = time.perf_counter() - t0
    report("1", not bad and dt < 10, f"{len(SWEEP) - len(bad)}/{len(SWEEP)} match the oracle in {dt:.2f}s")


def test_c02_oracle_medoids():
    cfg = OracleConfig("medoid")
    bad = [s for s, (x, K, M) in enumerate(SWEEP)
           if not rel_close(solve_medoids(_inst(x, K, M))[0].total_cost, brute_force(x, K, M, cfg).total_cost, 1e-6)]
    report("2", not bad, f"{len(SWEEP) - len(bad)}/{len(SWEEP)} match the medoid oracle")


def _budget_sweep():
    rng = np.random.default_rng(77)
    out = []
    for _ in range(200):
        N = int(rng.integers(4, 11))
        out.append((rng.uniform(-5, 5, N), int(rng.integers(1, 4)), int(rng.integers(0, 6)),
                    rng.integers(1, 4, N)))
    return out


def test_c03a_oracle_budget():
    cfg = OracleConfig(budget_mode=True)
    bad = []
    for s, (x, K, M, m) in enumerate(_budget_sweep()):
        got = solve_budgeted(_inst(x, K, M, budgets=m, unit_budget=False))[0].total_cost
        ref = brute_force(x, K, M, cfg, budgets=m).total_cost
        if not rel_close(got, ref, 1e-6):
            bad.append(s)
    report("3a", not bad, f"{200 - len(bad)}/200 budgeted instances match the budget-aware oracle")


def test_c03b_budget_unit_matrix():
    worst = 0.0
    same_inf = True
    for x, K, M in SWEEP:
        a = solve_unweighted(_inst(x, K, M))[1].values
        b = solve_budgeted(_inst(x, K, M, budgets=np.ones(len(x), dtype=int)))[1].values
        same_inf &= bool(np.array_equal(np.isinf(a), np.isinf(b)))
        fin = np.isfinite(a)
        worst = max(worst, float(np.max(np.abs(a[fin] - b[fin]), initial=0.0)))
    report("3b", same_inf and worst <= 1e-12, f"unit-budget O matrix max deviation {worst:.3g}")


@pytest.fixture(scope="module")
def counter():
    return {
        "oracle": brute_force(COUNTER_X, 2, 1, weights=COUNTER_W),
        "strict": solve_weighted_heuristic(_inst(COUNTER_X, 2, 1, weights=COUNTER_W), inner_outlier=False),
        "heur": solve_weighted_heuristic(_inst(COUNTER_X, 2, 1, weights=COUNTER_W)),
    }


def test_c04a_counter_example_structure(counter):
    sol = counter["oracle"]
    got = (sol.outliers, [c.members for c in sol.clusters])
    want = ((1,), [(0, 2), (3, 4)])
    report("4a", got == want, f"oracle outliers/clusters (0-based) {got}, expected {want}")


def test_c04b_counter_example_cost(counter):
    want = 40 / 11 + 100 / 101
    got = counter["oracle"].total_cost
    report("4b", rel_close(got, want, 1e-9), f"oracle cost {got:.9f}, expected {want:.9f}")


def test_c04c_strict_interval_worse(counter):
    strict, best = counter["strict"].total_cost, counter["oracle"].total_cost
    report("4c", strict > best + 1e-9, f"strict-interval DP {strict:.9f} vs oracle {best:.9f}")


def test_c04d_heuristic_attains(counter):
    got, best = counter["heur"].total_cost, counter["oracle"].total_cost
    report("4d", rel_close(got, best, 1e-9), f"heuristic {got:.9f} vs oracle {best:.9f}")


def test_c05_interval_property():
    solver_bad = 0
    for x, K, M in SWEEP:
        for solve in (solve_unweighted, solve_medoids):
            if not is_interval_solution(x, solve(_inst(x, K, M))[0], len(x), M, K):
                solver_bad += 1
    oracle_bad = checked = 0
    for x, K, M in random_sweep(5, 500):
        for sol in enumerate_optima(x, K, M):
            checked += 1
            oracle_bad += not is_interval_solution(x, sol, len(x), M, K)
    report("5", solver_bad == 0 and oracle_bad == 0,
           f"{solver_bad} non-interval DP solutions; {oracle_bad}/{checked} non-interval oracle optima over 500 instances")


def test_c06_recurrences():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(50):
        N = int(rng.integers(2, 65))
        x, w = np.sort(rng.normal(0, 10, N)), rng.uniform(0.1, 10, N)
        for i in range(N):
            s = singleton(x[i], w[i])
            for j in range(i + 1, N):
                s = extend_right(s, x[j], w[j])
                ref = centroid_cost(x[i : j + 1], w[i : j + 1])[1]
                worst = max(worst, abs(s.c - ref) / max(1.0, ref))
        for j in range(N):
            s = singleton(x[j], w[j])
            for i in range(j - 1, -1, -1):
                s = extend_left(s, x[i], w[i])
                ref = centroid_cost(x[i : j + 1], w[i : j + 1])[1]
                worst = max(worst, abs(s.c - ref) / max(1.0, ref))
    report("6", worst <= 1e-9, f"max relative deviation {worst:.3g} over 50 weighted instances")


def test_c07_k1_special_cases():
    rng = np.random.default_rng(7)
    bad_u = bad_w = 0
    for _ in range(100):
        N = int(rng.integers(2, 40))
        M = int(rng.integers(0, N))
        x = rng.normal(0, 5, N)
        bad_u += not rel_close(solve_k1_unweighted(_inst(x, 1, M)).total_cost,
                               solve_unweighted(_inst(x, 1, M))[0].total_cost)
    for _ in range(100):
        N = int(rng.integers(2, 30))
        x, w = rng.normal(0, 5, N), rng.uniform(0.1, 100, N)
        ref = min([centroid_cost(x, w)[1]] + [centroid_cost(np.delete(x, r), np.delete(w, r))[1] for r in range(N)])
        bad_w += not rel_close(solve_k1_weighted_m1(_inst(x, 1, 1, weights=w)).total_cost, ref)
    report("7", bad_u == 0 and bad_w == 0, f"window mismatches {bad_u}/100, leave-one-out mismatches {bad_w}/100")


def test_c08_tradeoff_tables():
    problems = 0
    for x, K, M in SWEEP[:100]:
        inst = _inst(x, K, M)
        table = tradeoff_table(inst)
        problems += not np.all(np.diff(table) <= 1e-12)
        problems += not rel_close(table[0], brute_force(x, K, 0).total_cost, 1e-9)
        problems += not rel_close(table[-1], solve_unweighted(inst)[0].total_cost, 1e-9)
    report("8", problems == 0, f"{problems} violations over 100 tables")


def test_c09_extended_model():
    sweep = random_sweep(9, 100, n_range=(3, 10))
    bad = sum(not rel_close(minimize_extended(build_extended(x, K, M))[0],
                            solve_unweighted(_inst(x, K, M))[0].total_cost, 1e-6) for x, K, M in sweep)
    report("9", bad == 0, f"{len(sweep) - bad}/{len(sweep)} extended-model minima equal the DP optimum")


def _median_time(N, runs=5):
    x = np.random.default_rng(N).uniform(0, 1000, N)
    inst = _inst(x, 3, 3)
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        solve_unweighted(inst)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_c10_scaling():
    t1, t2 = _median_time(1000), _median_time(2000)
    ratio = t2 / t1
    report("10", ratio <= 5.0 and t2 < 30, f"median {t1:.3f}s at N=1000, {t2:.3f}s at N=2000, ratio {ratio:.2f}")


def test_c11_dominance():
    rng = np.random.default_rng(11)
    bad = 0
    for _ in range(60):
        N = int(rng.integers(4, 10))
        K, M = int(rng.integers(1, 3)), int(rng.integers(0, 3))
        M = min(M, N - K)
        x, w = rng.uniform(0, 10, N), rng.uniform(0.1, 50, N)
        ref = brute_force(x, K, M, weights=w).total_cost
        bad += solve_weighted_heuristic(_inst(x, K, M, weights=w)).total_cost < ref - 1e-9
        X = rng.normal(size=(N, 2))
        ref2 = brute_force(X, K, M).total_cost
        for spec in (ProjectionSpec(), ProjectionSpec("random_direction", seed=3)):
            bad += solve_projected(X, K, M, spec).total_cost < ref2 - 1e-9
    lossless = 0
    for _ in range(20):
        t = rng.uniform(-5, 5, 8)
        X = np.array([2.0, 1.0, -1.0]) + t[:, None] * np.array([1.0, 2.0, 2.0]) / 3
        lossless += not rel_close(solve_projected(X, 2, 1, ProjectionSpec()).total_cost,
                                  brute_force(X, 2, 1).total_cost, 1e-9)
    report("11", bad == 0 and lossless == 0, f"{bad} dominance violations, {lossless}/20 collinear mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
