"""Exhaustive reference solver for small instances, any dimension.

Enumerates every admissible outlier set and every partition of the
survivors into at most K blocks. Nothing here assumes interval structure, so
it can be used to test that structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    Cluster,
    DomainError,
    GuardError,
    ParameterError,
    Solution,
    SolverMode,
    WeightedPoint,
    centroid_cost,
    medoid_cost,
)


@dataclass(frozen=True)
class OracleConfig:
    cost_kind: str = "centroid"  # or "medoid"
    budget_mode: bool = False
    max_N: int = 14

    def __post_init__(self):
        if self.cost_kind not in ("centroid", "medoid"):
            raise DomainError(f"unknown cost kind {self.cost_kind!r}")


@lru_cache(maxsize=None)
def restricted_growth_strings(n: int, max_blocks: int) -> np.ndarray:
    """All set partitions of ``n`` items into at most ``max_blocks`` blocks.

    Row ``r`` gives the block label of each item; labels appear in order of
    first use, so every partition is listed exactly once, in lexicographic
    order.
    """
    rows = []
    labels = [0] * n

    def rec(pos, used):
        if pos == n:
            rows.append(tuple(labels))
            return
        for lab in range(min(used + 1, max_blocks)):
            labels[pos] = lab
            rec(pos + 1, max(used, lab + 1))

    if n == 0:
        rows.append(())
    elif max_blocks >= 1:
        rec(0, 0)
    out = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    out.setflags(write=False)
    return out


def _unpack(points, weights, budgets):
    if len(points) and isinstance(points[0], WeightedPoint):
        X = np.array([p.coords for p in points], dtype=float)
        w = np.array([p.weight for p in points])
        m = np.array([p.budget for p in points], dtype=int)
        return X, w, m
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n = len(X)
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    m = np.ones(n, dtype=int) if budgets is None else np.asarray(budgets, dtype=int)
    return X, w, m


def _subset_costs(X, w, kind):
    """Cost of every subset, indexed by bitmask; the empty set costs 0."""
    n = len(X)
    costs = np.zeros(1 << n)
    centers = [None] * (1 << n)
    for mask in range(1, 1 << n):
        idx = [t for t in range(n) if mask >> t & 1]
        if kind == "centroid":
            center, cost = centroid_cost(X[idx], w[idx])
        else:
            t, cost = medoid_cost(X[idx], w[idx])
            center = X[idx][t]
        costs[mask] = cost
        centers[mask] = center
    return costs, centers


def _outlier_sets(n, budgets, M, budget_mode):
    """Admissible outlier sets, by size then lexicographically."""
    for size in range(n + 1):
        if not budget_mode and size > M:
            return
        for combo in itertools.combinations(range(n), size):
            if budget_mode and sum(int(budgets[t]) for t in combo) > M:
                continue
            yield combo


def _prepare(points, weights, budgets, K, M, config):
    X, w, m = _unpack(points, weights, budgets)
    if len(X) > config.max_N:
        raise GuardError(f"oracle limited to N <= {config.max_N}, got {len(X)}")
    if K < 1 or M < 0:
        raise ParameterError("need K >= 1 and M >= 0")
    if np.any(w <= 0):
        raise DomainError("weights must be positive")
    costs, centers = _subset_costs(X, w, config.cost_kind)
    return X, m, costs, centers


def _scan(n, m, costs, K, M, config):
    """Yield ``(totals, outliers, block masks)`` per outlier set, vectorised over partitions."""
    for outliers in _outlier_sets(n, m, M, config.budget_mode):
        survivors = np.array([t for t in range(n) if t not in outliers], dtype=np.int64)
        rgs = restricted_growth_strings(len(survivors), K)
        bits = np.left_shift(1, survivors)
        masks = np.stack([(rgs == lab) @ bits for lab in range(K)], axis=1)
        yield costs[masks].sum(axis=1), outliers, masks


def _solution(masks_row, outliers, costs, centers, n):
    clusters = []
    for mask in masks_row:
        mask = int(mask)
        if mask == 0:
            continue
        members = tuple(t for t in range(n) if mask >> t & 1)
        center = centers[mask]
        if np.ndim(center) == 1 and len(center) == 1:
            center = float(center[0])
        clusters.append(Cluster(members, center, float(costs[mask])))
    clusters.sort(key=lambda c: c.members)
    return Solution(
        clusters=clusters,
        outliers=tuple(outliers),
        total_cost=float(sum(c.cost for c in clusters)),
        mode=SolverMode.ORACLE,
    )


def brute_force(points, K: int, M: int, config: OracleConfig = OracleConfig(), weights=None, budgets=None) -> Solution:
    """Global optimum by exhaustive enumeration.

    ``points`` is a list of :class:`WeightedPoint` or an array of shape
    ``(N,)`` / ``(N, L)`` with optional ``weights`` and ``budgets``. Ties
    keep the first solution in enumeration order.
    """
    X, m, costs, centers = _prepare(points, weights, budgets, K, M, config)
    best, arg = np.inf, None
    for totals, outliers, masks in _scan(len(X), m, costs, K, M, config):
        r = int(np.argmin(totals))
        if totals[r] < best:
            best, arg = totals[r], (masks[r], outliers)
    return _solution(arg[0], arg[1], costs, centers, len(X))


def enumerate_optima(points, K: int, M: int, config: OracleConfig = OracleConfig(), tolerance: float = 1e-9,
                     weights=None, budgets=None) -> list[Solution]:
    """Every solution whose cost is within ``tolerance * max(1, optimum)`` of the optimum."""
    X, m, costs, centers = _prepare(points, weights, budgets, K, M, config)
    found = list(_scan(len(X), m, costs, K, M, config))
    best = min(float(t.min()) for t, _, _ in found)
    limit = best + tolerance * max(1.0, abs(best))
    out = []
    for totals, outliers, masks in found:
        for r in np.flatnonzero(totals <= limit):
            out.append(_solution(masks[r], outliers, costs, centers, len(X)))
    return out
