"""Linear-time solvers for a single cluster."""

from __future__ import annotations

from .cluster_cost import extend_left, extend_right, merge, shrink, singleton
from .core import Instance1D, ModeError, ParameterError, Solution, SolverMode
from .dp import assemble_solution


def solve_k1_unweighted(instance: Instance1D) -> Solution:
    """Best window of ``N - M`` consecutive sorted points, unit weights.

    Slides the window one step at a time, keeping only the running stats of
    the current window. Ties keep the leftmost window.
    """
    N, M = instance.N, instance.M
    if instance.K != 1:
        raise ParameterError("sliding-window solver handles K = 1 only")
    if not instance.unit_weights:
        raise ModeError("sliding-window K=1 solver needs unit weights")
    if M >= N:
        raise ParameterError(f"M = {M} leaves no point to cluster (N = {N})")
    x = instance.x
    width = N - M
    s = singleton(x[0])
    for t in range(1, width):
        s = extend_right(s, x[t])
    best, best_lo = s.c, 0
    for lo in range(1, M + 1):
        s = extend_right(s, x[lo + width - 1])
        s = shrink(s, x[lo - 1])
        if s.c < best:
            best, best_lo = s.c, lo
    skipped = list(range(best_lo)) + list(range(best_lo + width, N))
    return assemble_solution(instance, [(best_lo, best_lo + width - 1, None)], skipped, SolverMode.K1_SPECIAL)


def solve_k1_weighted_m1(instance: Instance1D) -> Solution:
    """Weighted single cluster with at most one discarded point, O(N).

    Prefix and suffix stats give the cost of every leave-one-out set by one
    merge. Keeping every point wins ties; otherwise the lowest position.
    """
    if instance.K != 1 or instance.M != 1:
        raise ParameterError("this solver handles K = 1, M = 1 only")
    x, w = instance.x, instance.weights
    N = instance.N
    prefix = [None] * (N + 1)  # prefix[r]: points 0..r-1
    suffix = [None] * (N + 1)  # suffix[r]: points r..N-1
    for r in range(N):
        prev = prefix[r]
        prefix[r + 1] = singleton(x[r], w[r]) if prev is None else extend_right(prev, x[r], w[r])
    for r in range(N - 1, -1, -1):
        nxt = suffix[r + 1]
        suffix[r] = singleton(x[r], w[r]) if nxt is None else extend_left(nxt, x[r], w[r])

    best, removed = prefix[N].c, None
    for r in range(N):
        a, b = prefix[r], suffix[r + 1]
        if a is None and b is None:
            cost = 0.0
        elif a is None or b is None:
            cost = (a or b).c
        else:
            cost = merge(a, b).c
        if cost < best:
            best, removed = cost, r
    if removed is None:
        return assemble_solution(instance, [(0, N - 1, None)], [], SolverMode.K1_SPECIAL)
    if N == 1:
        return assemble_solution(instance, [], [0], SolverMode.K1_SPECIAL)
    if removed in (0, N - 1):
        lo, hi = (1, N - 1) if removed == 0 else (0, N - 2)
        return assemble_solution(instance, [(lo, hi, None)], [removed], SolverMode.K1_SPECIAL)
    return assemble_solution(instance, [(0, N - 1, removed)], [], SolverMode.K1_SPECIAL)
