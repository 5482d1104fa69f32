"""Projection heuristic for multi-dimensional data.

Points are projected on a line, the 1D problem is solved by one of the
interval DPs, and the resulting memberships are recosted in the original
space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Cluster,
    DimensionError,
    DomainError,
    Instance1D,
    ParameterError,
    Solution,
    SolverMode,
    centroid_cost,
    medoid_cost,
)
from .dp import solve_medoids, solve_unweighted, solve_weighted_heuristic


@dataclass(frozen=True)
class ProjectionSpec:
    method: str = "principal_component"  # coordinate | random_direction | principal_component
    axis: int = 0
    seed: int = 0
    iterations: int = 100
    tolerance: float = 1e-10

    @classmethod
    def parse(cls, text: str) -> "ProjectionSpec":
        """Read ``coordinate:IDX``, ``random:SEED`` or ``pca``."""
        name, _, arg = text.partition(":")
        try:
            if name == "coordinate":
                return cls("coordinate", axis=int(arg))
            if name == "random":
                return cls("random_direction", seed=int(arg))
        except ValueError:
            raise ParameterError(f"bad projection argument {text!r}") from None
        if name == "pca" and not arg:
            return cls("principal_component")
        raise ParameterError(f"unknown projection {text!r}")


def principal_direction(X: np.ndarray, weights=None, iterations=100, tolerance=1e-10):
    """Leading eigenvector of the weighted covariance by power iteration.

    Returns ``None`` when the data has no spread. The sign is fixed so the
    first nonzero component is positive.
    """
    w = np.ones(len(X)) if weights is None else np.asarray(weights, dtype=float)
    mean = w @ X / w.sum()
    Y = X - mean
    cov = (Y * w[:, None]).T @ Y / w.sum()
    if not np.any(cov):
        return None
    u = np.random.default_rng(0).standard_normal(X.shape[1])
    u /= np.linalg.norm(u)
    for _ in range(iterations):
        nxt = cov @ u
        norm = np.linalg.norm(nxt)
        if norm == 0:
            return None
        nxt /= norm
        done = np.linalg.norm(nxt - u) < tolerance
        u = nxt
        if done:
            break
    nz = np.flatnonzero(np.abs(u) > 1e-15)
    if len(nz) and u[nz[0]] < 0:
        u = -u
    return u


def project(points, spec: ProjectionSpec, K: int, M: int, weights=None, budgets=None,
            unit_budget: bool = True) -> tuple[Instance1D, np.ndarray, dict]:
    """Project ``points`` (shape ``(N, L)``, ``L >= 2``) on a unit direction."""
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise DimensionError("projection needs points of dimension >= 2")
    if not np.all(np.isfinite(X)):
        raise DomainError("coordinates must be finite")
    L = X.shape[1]
    info = {"method": spec.method, "fallback": False}
    if spec.method == "coordinate":
        if not 0 <= spec.axis < L:
            raise ParameterError(f"axis {spec.axis} out of range for dimension {L}")
        direction = np.eye(L)[spec.axis]
    elif spec.method == "random_direction":
        direction = np.random.default_rng(spec.seed).standard_normal(L)
        direction /= np.linalg.norm(direction)
    elif spec.method == "principal_component":
        direction = principal_direction(X, weights, spec.iterations, spec.tolerance)
        if direction is None:
            direction = np.eye(L)[0]
            info["fallback"] = True
    else:
        raise ParameterError(f"unknown projection method {spec.method!r}")
    inst = Instance1D.from_arrays(X @ direction, K, M, weights=weights, budgets=budgets, unit_budget=unit_budget)
    return inst, direction, info


_BASE = {
    SolverMode.EXACT_1D: lambda inst: solve_unweighted(inst)[0],
    SolverMode.MEDOID_1D: lambda inst: solve_medoids(inst)[0],
    SolverMode.HEURISTIC_WEIGHTED: solve_weighted_heuristic,
}


def solve_projected(points, K: int, M: int, spec: ProjectionSpec, mode=SolverMode.EXACT_1D,
                    weights=None) -> Solution:
    """Cluster via a 1D projection, then recompute centers and costs in full dimension.

    Points dropped from inside a cluster by the weighted heuristic become
    plain outliers after lifting.
    """
    mode = SolverMode(mode)
    if mode not in _BASE:
        raise ParameterError(f"projection cannot use base mode {mode.value}")
    X = np.asarray(points, dtype=float)
    w = np.ones(len(X)) if weights is None else np.asarray(weights, dtype=float)
    inst, direction, info = project(X, spec, K, M, weights=w)
    flat = _BASE[mode](inst)
    clusters = []
    for c in flat.clusters:
        idx = list(c.members)
        if mode == SolverMode.MEDOID_1D:
            t, cost = medoid_cost(X[idx], w[idx])
            center = X[idx][t]
        else:
            center, cost = centroid_cost(X[idx], w[idx])
        clusters.append(Cluster(c.members, center, cost))
    info.update(direction=direction.tolist(), base_mode=mode.value, projected_cost=flat.total_cost)
    return Solution(
        clusters=clusters,
        outliers=flat.outliers,
        total_cost=float(sum(c.cost for c in clusters)),
        mode=SolverMode.PROJECTED,
        metadata=info,
    )
