"""Dynamic programs for partial k-means on sorted 1D points.

``O[i, k, m]`` is the optimal cost of the first ``i`` sorted points using at
most ``k`` clusters and an outlier budget of at most ``m``. Row ``i = 0`` and
column ``k = 0`` are boundary cases, so 1-based indices ``i = 1..N`` and
``k = 1..K`` address the table directly.

Recursion: point ``i`` is either discarded (Skip) or closes the last cluster
``[j, i]`` (Cut), after which the prefix ``j - 1`` is solved with one cluster
fewer. In the weighted heuristic the last cluster may also drop one of its
points, spending one unit of budget.

Tie-breaking: Skip wins ties against Cut; among Cuts the largest ``j`` wins;
among equal ``j`` the plain cut wins over the one with a dropped point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster_cost import column_stats, inner_outlier_column, medoid_column
from .core import (
    Cluster,
    Instance1D,
    IntervalCluster,
    ModeError,
    PMSSCError,
    Solution,
    SolverMode,
    centroid_cost,
    medoid_cost,
)

NONE, SKIP, CUT = 0, 1, 2


class BacktrackError(PMSSCError, RuntimeError):
    """Parent chain of a DP table is inconsistent."""


@dataclass(frozen=True)
class DPMatrix:
    values: np.ndarray  # (N+1, K+1, M+1)
    choice: np.ndarray  # NONE / SKIP / CUT
    start: np.ndarray  # 1-based first point of the last cluster for CUT
    inner: np.ndarray  # 0/1: does the last cluster drop a point
    drop: np.ndarray  # 1-based dropped point when inner == 1
    mode: SolverMode

    @property
    def optimum(self) -> float:
        return float(self.values[-1, -1, -1])


def _forward(inst: Instance1D, mode: SolverMode, budgets: np.ndarray, inner: bool) -> DPMatrix:
    x, w = inst.x, inst.weights
    N, K, M = inst.N, inst.K, inst.M
    unit = mode in (SolverMode.EXACT_1D, SolverMode.MEDOID_1D)

    O = np.full((N + 1, K + 1, M + 1), np.inf)
    choice = np.zeros(O.shape, dtype=np.int8)
    start = np.zeros(O.shape, dtype=np.int32)
    inner_used = np.zeros(O.shape, dtype=np.int8)
    drop = np.zeros(O.shape, dtype=np.int32)

    # no cluster at all: feasible only while the whole prefix fits in the budget
    spent = np.concatenate(([0], np.cumsum(budgets)))
    for m in range(M + 1):
        ok = spent <= m
        O[ok, 0, m] = 0.0
        choice[1:, 0, m][ok[1:]] = SKIP
    O[0, :, :] = 0.0

    for i in range(1, N + 1):
        if mode == SolverMode.MEDOID_1D:
            _, col = medoid_column(x, w, i - 1)
        else:
            col = column_stats(x, w, i - 1)[2]
        # col[j - 1] is the cost of the cluster [j, i]
        if inner:
            col1, dropped = inner_outlier_column(x, w, i - 1)
        mi = int(budgets[i - 1])
        for k in range(1, K + 1):
            for m in range(M + 1):
                lo = min(k + m, i) if unit else 1
                cand = O[lo - 1 : i, k - 1, m] + col[lo - 1 : i]
                r = len(cand) - 1 - int(np.argmin(cand[::-1]))
                best, j, l = cand[r], lo + r, 0
                if inner and m >= 1:
                    cand1 = O[0:i, k - 1, m - 1] + col1
                    r1 = i - 1 - int(np.argmin(cand1[::-1]))
                    # strict improvement, or equal cost at a larger start
                    if cand1[r1] < best or (cand1[r1] == best and r1 + 1 > j):
                        best, j, l = cand1[r1], r1 + 1, 1
                if mi <= m and O[i - 1, k, m - mi] <= best:
                    O[i, k, m] = O[i - 1, k, m - mi]
                    choice[i, k, m] = SKIP
                else:
                    O[i, k, m] = best
                    choice[i, k, m] = CUT
                    start[i, k, m] = j
                    inner_used[i, k, m] = l
                    if l:
                        drop[i, k, m] = dropped[j - 1] + 1
    return DPMatrix(O, choice, start, inner_used, drop, mode)


def backtrack(matrix: DPMatrix, instance: Instance1D, budgets: np.ndarray | None = None) -> Solution:
    """Rebuild clusters and outliers from the parent choices of ``matrix``."""
    if budgets is None:
        budgets = np.ones(instance.N, dtype=int) if matrix.mode != SolverMode.BUDGET_1D else instance.budgets
    i, k, m = instance.N, instance.K, instance.M
    intervals, skipped = [], []
    while i > 0:
        if not (0 <= k and 0 <= m):
            raise BacktrackError(f"negative state k={k}, m={m}")
        code = matrix.choice[i, k, m]
        if code == SKIP:
            skipped.append(i - 1)
            m -= int(budgets[i - 1])
            i -= 1
        elif code == CUT:
            j = int(matrix.start[i, k, m])
            if not 1 <= j <= i:
                raise BacktrackError(f"cut start {j} outside 1..{i}")
            lo, hi = j - 1, i - 1
            inner = None
            if matrix.inner[i, k, m]:
                d = int(matrix.drop[i, k, m]) - 1
                m -= 1
                # a dropped endpoint is an ordinary outlier of a shorter interval
                if d == lo:
                    skipped.append(lo)
                    lo += 1
                elif d == hi:
                    skipped.append(hi)
                    hi -= 1
                else:
                    inner = d
            intervals.append((lo, hi, inner))
            i, k = j - 1, k - 1
        else:
            raise BacktrackError(f"no parent recorded at state ({i}, {k}, {m})")
    if m < 0:
        raise BacktrackError("outlier budget overdrawn")
    intervals.reverse()
    return assemble_solution(instance, intervals, skipped, matrix.mode)


def assemble_solution(instance: Instance1D, intervals, skipped, mode: SolverMode) -> Solution:
    """Map sorted-position intervals to input indices and recost them from scratch."""
    x, w, perm = instance.x, instance.weights, instance.perm
    medoid = mode == SolverMode.MEDOID_1D
    clusters, boxes = [], []
    outliers = {int(perm[s]) for s in skipped}
    for lo, hi, inner in intervals:
        pos = [s for s in range(lo, hi + 1) if s != inner]
        if medoid:
            t, cost = medoid_cost(x[pos], w[pos])
            center = float(x[pos][t])
        else:
            center, cost = centroid_cost(x[pos], w[pos])
        inner_idx = None
        if inner is not None:
            inner_idx = int(perm[inner])
            outliers.add(inner_idx)
        clusters.append(Cluster(tuple(sorted(int(perm[s]) for s in pos)), center, cost, inner_idx))
        boxes.append(IntervalCluster(lo, hi, center, cost, inner))
    return Solution(
        clusters=clusters,
        outliers=tuple(sorted(outliers)),
        total_cost=float(sum(c.cost for c in clusters)),
        mode=mode,
        intervals=tuple(boxes),
    )


def _require_unit(instance: Instance1D, what: str):
    if not instance.unit_weights:
        raise ModeError(f"{what} needs unit weights; use the weighted heuristic for weighted data")
    if not instance.unit_budgets:
        raise ModeError(f"{what} needs unit budgets; use the budgeted solver")
    if instance.K + instance.M >= instance.N + 1:
        raise ModeError("K + M must not exceed N")


def solve_unweighted(instance: Instance1D) -> tuple[Solution, DPMatrix]:
    """Exact partial k-means for unit weights in O(K N^2 (1 + M))."""
    _require_unit(instance, "the exact DP")
    mat = _forward(instance, SolverMode.EXACT_1D, np.ones(instance.N, dtype=int), inner=False)
    return backtrack(mat, instance), mat


def solve_medoids(instance: Instance1D) -> tuple[Solution, DPMatrix]:
    """Exact partial k-medoids (centers restricted to members) for unit weights."""
    _require_unit(instance, "the medoid DP")
    mat = _forward(instance, SolverMode.MEDOID_1D, np.ones(instance.N, dtype=int), inner=False)
    return backtrack(mat, instance), mat


def solve_budgeted(instance: Instance1D) -> tuple[Solution, DPMatrix]:
    """Interval DP where discarding point n costs ``budgets[n]`` of the budget M.

    Optimal among interval clusterings. With unit weights and unit budgets
    this is the exact solver; otherwise an optimum may discard a point from
    the inside of a cluster, which no interval solution can express.
    """
    budgets = np.asarray(instance.budgets)
    mat = _forward(instance, SolverMode.BUDGET_1D, budgets, inner=False)
    return backtrack(mat, instance, budgets), mat


def solve_weighted_heuristic(instance: Instance1D, inner_outlier: bool = True) -> Solution:
    """Primal heuristic for weighted data: intervals, each allowed one dropped point.

    ``inner_outlier=False`` gives the plain interval DP on weighted data.
    """
    mat = _forward(instance, SolverMode.HEURISTIC_WEIGHTED, np.ones(instance.N, dtype=int), inner=inner_outlier)
    sol = backtrack(mat, instance)
    sol.metadata["dp_value"] = mat.optimum
    return sol


_SOLVERS = {
    SolverMode.EXACT_1D: lambda inst: solve_unweighted(inst)[1],
    SolverMode.MEDOID_1D: lambda inst: solve_medoids(inst)[1],
    SolverMode.BUDGET_1D: lambda inst: solve_budgeted(inst)[1],
}


def tradeoff_table(instance: Instance1D, mode: SolverMode | str = SolverMode.EXACT_1D) -> np.ndarray:
    """Optimal cost for every outlier budget ``m = 0..M`` from a single DP run."""
    mode = SolverMode(mode)
    if mode == SolverMode.HEURISTIC_WEIGHTED:
        mat = _forward(instance, mode, np.ones(instance.N, dtype=int), inner=True)
    elif mode in _SOLVERS:
        mat = _SOLVERS[mode](instance)
    else:
        raise ModeError(f"no trade-off table for mode {mode.value}")
    return mat.values[instance.N, instance.K, :].copy()
