"""Incremental interval costs on sorted 1D data.

A contiguous range of sorted points is summarised by ``(v, b, c)``: total
weight, weighted centroid and weighted sum of squared deviations. Growing the
range by one point on either side updates the triple in O(1).

The DP consumes one column at a time: the costs of every range ending at a
fixed position. :func:`column_stats` produces such a column with the same
left-extension recurrence, evaluated with cumulative sums instead of a Python
loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, Instance1D


@dataclass(frozen=True, slots=True)
class RunningClusterStats:
    v: float
    b: float
    c: float


def singleton(x: float, w: float = 1.0) -> RunningClusterStats:
    if not w > 0:
        raise DomainError("weight must be positive")
    return RunningClusterStats(float(w), float(x), 0.0)


def _extend(s: RunningClusterStats, x: float, w: float) -> RunningClusterStats:
    v = s.v + w
    b = (w * x + s.b * s.v) / v
    # the new point is measured against the *new* centroid
    c = s.c + w * (x - b) ** 2 + s.v * (b - s.b) ** 2
    return RunningClusterStats(v, b, c)


def extend_right(stats: RunningClusterStats, x_next: float, w_next: float = 1.0) -> RunningClusterStats:
    """Stats of the range grown by one point on the right."""
    return _extend(stats, x_next, w_next)


def extend_left(stats: RunningClusterStats, x_prev: float, w_prev: float = 1.0) -> RunningClusterStats:
    """Stats of the range grown by one point on the left.

    In one dimension the update does not depend on the side; both names are
    kept so call sites read like the sweep they perform.
    """
    return _extend(stats, x_prev, w_prev)


def shrink(stats: RunningClusterStats, x: float, w: float = 1.0) -> RunningClusterStats:
    """Inverse of an extension: drop the point ``(x, w)`` from the range."""
    v = stats.v - w
    if v <= 0:
        raise DomainError("cannot remove the last point of a range")
    b = (stats.b * stats.v - w * x) / v
    c = stats.c - w * (x - stats.b) ** 2 - v * (stats.b - b) ** 2
    return RunningClusterStats(v, b, max(c, 0.0))


def merge(a: RunningClusterStats, b: RunningClusterStats) -> RunningClusterStats:
    """Stats of the union of two disjoint ranges."""
    v = a.v + b.v
    centroid = (a.v * a.b + b.v * b.b) / v
    c = a.c + b.c + a.v * b.v / v * (a.b - b.b) ** 2
    return RunningClusterStats(v, centroid, c)


def costs_from_left(instance: Instance1D) -> np.ndarray:
    """``out[i]`` is the cost of sorted positions ``0..i``."""
    x, w = instance.x, instance.weights
    out = np.empty(len(x))
    s = singleton(x[0], w[0])
    out[0] = 0.0
    for i in range(1, len(x)):
        s = extend_right(s, x[i], w[i])
        out[i] = s.c
    return out


def column_stats(x: np.ndarray, w: np.ndarray, end: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(v, b, c)`` arrays for every range ``[i, end]``, ``i = 0..end``."""
    xs = x[: end + 1]
    ws = w[: end + 1]
    v = np.cumsum(ws[::-1])[::-1]
    b = np.cumsum((ws * xs)[::-1])[::-1] / v
    inc = np.zeros(end + 1)
    if end > 0:
        inc[:-1] = ws[:-1] * (xs[:-1] - b[:-1]) ** 2 + v[1:] * (b[:-1] - b[1:]) ** 2
    c = np.cumsum(inc[::-1])[::-1]
    return v, b, c


def _check_end(instance: Instance1D, j: int):
    if not 0 <= j < instance.N:
        raise DomainError(f"position {j} out of range 0..{instance.N - 1}")


def costs_ending_at(instance: Instance1D, j: int) -> np.ndarray:
    """``out[i]`` is the centroid cost of sorted positions ``i..j``."""
    _check_end(instance, j)
    return column_stats(instance.x, instance.weights, j)[2]


def medoid_column(x: np.ndarray, w: np.ndarray, end: int) -> tuple[np.ndarray, np.ndarray]:
    """Medoid position and medoid cost of every range ``[i, end]``.

    Around any center t, sum w (x - t)^2 = c + v (b - t)^2, so the medoid of a
    range is the member nearest its centroid.
    """
    v, b, c = column_stats(x, w, end)
    starts = np.arange(end + 1)
    right = np.clip(np.searchsorted(x[: end + 1], b, side="left"), starts, end)
    left = np.clip(right - 1, starts, end)
    pick_left = np.abs(x[left] - b) <= np.abs(x[right] - b)
    med = np.where(pick_left, left, right)
    return med, c + v * (b - x[med]) ** 2


def medoid_costs_ending_at(instance: Instance1D, j: int) -> np.ndarray:
    _check_end(instance, j)
    return medoid_column(instance.x, instance.weights, j)[1]


def inner_outlier_column(x: np.ndarray, w: np.ndarray, end: int) -> tuple[np.ndarray, np.ndarray]:
    """Best single-removal cost and removed position for every range ``[i, end]``.

    Ranges of one point get ``inf``. Removing ``r`` from ``[i, end]`` leaves
    ``[i, r-1]`` and ``[r+1, end]``, whose stats are merged in O(1).
    """
    n = end + 1
    best = np.full(n, np.inf)
    drop = np.full(n, -1, dtype=int)
    sv, sb, sc = column_stats(x, w, end)
    # suffix [r+1, end] for r = i..end, padded with an empty range at r = end
    sv = np.append(sv, 0.0)
    sb = np.append(sb, 0.0)
    sc = np.append(sc, 0.0)
    for i in range(end):
        xs, ws = x[i:n], w[i:n]
        pv = np.concatenate(([0.0], np.cumsum(ws)[:-1]))
        pwx = np.concatenate(([0.0], np.cumsum(ws * xs)[:-1]))
        pb = np.divide(pwx, pv, out=np.zeros_like(pwx), where=pv > 0)
        pinc = np.zeros(len(xs))
        if len(xs) > 1:
            # right-extension increments give the prefix costs [i, r-1]
            pinc[1:] = ws[:-1] * (xs[:-1] - pb[1:]) ** 2 + pv[:-1] * (pb[1:] - pb[:-1]) ** 2
        pc = np.cumsum(pinc)
        rv, rb, rc = sv[i + 1 : n + 1], sb[i + 1 : n + 1], sc[i + 1 : n + 1]
        tot = pv + rv
        cross = np.divide(pv * rv, tot, out=np.zeros_like(tot), where=tot > 0) * (pb - rb) ** 2
        cand = pc + rc + cross
        r = int(np.argmin(cand))
        best[i] = cand[r]
        drop[i] = i + r
    return best, drop


def one_inner_outlier_cost(instance: Instance1D, i: int, j: int) -> tuple[float, int]:
    """Cheapest centroid cost of ``[i, j]`` after discarding one of its points.

    Returns ``(cost, dropped position)``; ties go to the lowest position.
    """
    if not 0 <= i < j < instance.N:
        raise DomainError("need a range of at least two points")
    x, w = instance.x, instance.weights
    left = [None] * (j - i + 2)
    right = [None] * (j - i + 2)
    s = None
    for r in range(i, j + 1):
        left[r - i + 1] = s = singleton(x[r], w[r]) if s is None else extend_right(s, x[r], w[r])
    s = None
    for r in range(j, i - 1, -1):
        right[r - i] = s = singleton(x[r], w[r]) if s is None else extend_left(s, x[r], w[r])
    best, where = np.inf, -1
    for r in range(i, j + 1):
        a, b = left[r - i], right[r - i + 1]
        c = merge(a, b).c if a is not None and b is not None else (a or b).c
        if c < best:
            best, where = c, r
    return best, where
