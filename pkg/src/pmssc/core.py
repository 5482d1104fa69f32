"""Domain types, validation and from-scratch cluster costs.

Indices are 0-based everywhere inside the package. The JSON written by the
command-line front end converts them to 1-based row numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class PMSSCError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PMSSCError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(PMSSCError, ValueError):
    """Infeasible or inconsistent (K, M) parameters."""


class DimensionError(ParameterError):
    """Point dimension not supported by the requested solver."""


class ModeError(ParameterError):
    """The instance does not satisfy the preconditions of the chosen solver."""


class GuardError(PMSSCError):
    """Instance exceeds the size cap of an exhaustive routine."""


class ParseError(PMSSCError, ValueError):
    pass


class SolverMode(str, enum.Enum):
    EXACT_1D = "exact-1d"
    BUDGET_1D = "budget-1d"
    MEDOID_1D = "medoid-1d"
    K1_SPECIAL = "k1-special"
    HEURISTIC_WEIGHTED = "heuristic-weighted"
    PROJECTED = "projected"
    ORACLE = "oracle"


@dataclass(frozen=True)
class WeightedPoint:
    coords: tuple[float, ...]
    weight: float = 1.0
    budget: int = 1

    def __post_init__(self):
        coords = tuple(float(c) for c in np.atleast_1d(self.coords))
        if not coords:
            raise DomainError("a point needs at least one coordinate")
        object.__setattr__(self, "coords", coords)
        if not self.weight > 0:
            raise DomainError(f"weight must be positive, got {self.weight}")
        if int(self.budget) != self.budget or self.budget < 0:
            raise DomainError(f"budget must be a nonnegative integer, got {self.budget}")
        object.__setattr__(self, "budget", int(self.budget))

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Instance1D:
    """Points sorted by coordinate, with the map back to input order.

    ``perm[s]`` is the input index of the point at sorted position ``s``.
    """

    x: np.ndarray
    weights: np.ndarray
    budgets: np.ndarray
    perm: np.ndarray
    K: int
    M: int

    @property
    def N(self) -> int:
        return len(self.x)

    @property
    def unit_weights(self) -> bool:
        return bool(np.all(self.weights == 1.0))

    @property
    def unit_budgets(self) -> bool:
        return bool(np.all(self.budgets == 1))

    @classmethod
    def from_arrays(cls, x, K, M, weights=None, budgets=None, unit_budget=True):
        x = np.asarray(x, dtype=float)
        if x.ndim == 2 and x.shape[1] == 1:
            x = x[:, 0]
        n = len(x)
        weights = np.ones(n) if weights is None else weights
        budgets = np.ones(n, dtype=int) if budgets is None else budgets
        points = [
            WeightedPoint(np.atleast_1d(xi), float(wi), bi)
            for xi, wi, bi in zip(x, weights, budgets)
        ]
        return validate_and_sort(points, K, M, unit_budget=unit_budget)


@dataclass(frozen=True)
class IntervalCluster:
    """Cluster covering sorted positions ``lo..hi`` inclusive.

    ``inner_outlier`` is a sorted position strictly inside the range that is
    discarded from the cluster (weighted heuristic only).
    """

    lo: int
    hi: int
    center: float
    cost: float
    inner_outlier: int | None = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError("interval with lo > hi")
        if self.inner_outlier is not None and not self.lo < self.inner_outlier < self.hi:
            raise DomainError("inner outlier must lie strictly inside the interval")

    def positions(self) -> list[int]:
        return [s for s in range(self.lo, self.hi + 1) if s != self.inner_outlier]


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, ...]
    center: np.ndarray | float
    cost: float
    inner_outlier: int | None = None


@dataclass
class Solution:
    clusters: list[Cluster]
    outliers: tuple[int, ...]
    total_cost: float
    mode: SolverMode
    intervals: tuple[IntervalCluster, ...] = ()
    metadata: dict = field(default_factory=dict)

    def signature(self):
        """Hashable (clusters, outliers) pair, independent of cluster order."""
        return (
            frozenset(frozenset(c.members) for c in self.clusters),
            frozenset(self.outliers),
        )

    def labels(self, n: int) -> np.ndarray:
        """Cluster label per input point, -1 for outliers."""
        out = np.full(n, -1, dtype=int)
        for k, c in enumerate(self.clusters):
            out[list(c.members)] = k
        return out


def _as_matrix(points) -> np.ndarray:
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise DomainError("points must be a list of scalars or of equal-length vectors")
    return X


def centroid_cost(points, weights=None) -> tuple[np.ndarray | float, float]:
    """Weighted centroid of ``points`` and the weighted sum of squared distances to it.

    Scalars in, scalar center out; vectors in, vector center out.
    """
    scalar = np.ndim(points) == 1 or (np.ndim(points) == 0)
    X = _as_matrix(np.atleast_1d(points) if scalar else points)
    if len(X) == 0:
        raise DomainError("centroid of an empty cluster")
    w = np.ones(len(X)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(X),):
        raise DomainError("one weight per point expected")
    if np.any(w <= 0):
        raise DomainError("weights must be positive")
    center = (w @ X) / w.sum()
    cost = float(w @ ((X - center) ** 2).sum(axis=1))
    return (float(center[0]) if scalar else center), cost


def medoid_cost(points, weights=None) -> tuple[int, float]:
    """Member minimizing the weighted squared distance sum; ties go to the lowest index."""
    scalar = np.ndim(points) <= 1
    X = _as_matrix(np.atleast_1d(points) if scalar else points)
    if len(X) == 0:
        raise DomainError("medoid of an empty cluster")
    w = np.ones(len(X)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(X),):
        raise DomainError("one weight per point expected")
    sq = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
    totals = w @ sq
    best = int(np.argmin(totals))
    return best, float(totals[best])


def validate_and_sort(
    points: Sequence[WeightedPoint] | Iterable[WeightedPoint],
    K: int,
    M: int,
    unit_budget: bool = True,
) -> Instance1D:
    """Check parameters and build a stably sorted 1D instance.

    With ``unit_budget`` every removed point counts one toward ``M``, so at
    least ``K`` points must survive: ``K + M <= N``.
    """
    points = list(points)
    N = len(points)
    if N < 1:
        raise ParameterError("at least one point is required")
    if int(K) != K or K < 1:
        raise ParameterError(f"K must be a positive integer, got {K}")
    if int(M) != M or M < 0:
        raise ParameterError(f"M must be a nonnegative integer, got {M}")
    for p in points:
        if p.dim != 1:
            raise DimensionError(f"1D solver received a point of dimension {p.dim}")
    if unit_budget and K + M >= N + 1:
        raise ParameterError(f"K + M = {K + M} exceeds N = {N}: clusters cannot all be nonempty")

    x = np.array([p.coords[0] for p in points])
    if not np.all(np.isfinite(x)):
        raise DomainError("coordinates must be finite")
    perm = np.argsort(x, kind="stable")
    w = np.array([p.weight for p in points])[perm]
    m = np.array([p.budget for p in points], dtype=int)[perm]
    for arr in (x, w, m, perm):
        arr.setflags(write=False)
    xs = x[perm]
    xs.setflags(write=False)
    return Instance1D(x=xs, weights=w, budgets=m, perm=perm, K=int(K), M=int(M))


def points_from_arrays(X, weights=None, budgets=None) -> list[WeightedPoint]:
    X = _as_matrix(X)
    n = len(X)
    weights = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    budgets = np.ones(n, dtype=int) if budgets is None else budgets
    return [WeightedPoint(tuple(row), float(w), b) for row, w, b in zip(X, weights, budgets)]
