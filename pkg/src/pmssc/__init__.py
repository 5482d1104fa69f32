"""Partial k-means (k-means with at most M discarded outliers).

Exact dynamic programs for sorted 1D data, linear-time single-cluster
solvers, a projection heuristic for higher dimensions, an exhaustive oracle
and integer-programming model export.
"""

from .core import (
    Cluster,
    DimensionError,
    DomainError,
    GuardError,
    Instance1D,
    IntervalCluster,
    ModeError,
    ParameterError,
    ParseError,
    PMSSCError,
    Solution,
    SolverMode,
    WeightedPoint,
    centroid_cost,
    medoid_cost,
    validate_and_sort,
)
from .dp import (
    DPMatrix,
    backtrack,
    solve_budgeted,
    solve_medoids,
    solve_unweighted,
    solve_weighted_heuristic,
    tradeoff_table,
)
from .heuristics import ProjectionSpec, project, solve_projected
from .oracle import OracleConfig, brute_force, enumerate_optima
from .special_cases import solve_k1_unweighted, solve_k1_weighted_m1

__version__ = "0.1.0"
