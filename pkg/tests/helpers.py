"""Shared test utilities."""

import numpy as np


def rel_close(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def sorted_positions(x, members):
    """Sorted-order positions of input indices ``members`` (stable order)."""
    order = np.argsort(np.asarray(x), kind="stable")
    rank = np.empty(len(order), dtype=int)
    rank[order] = np.arange(len(order))
    return sorted(int(rank[i]) for i in members)


def is_interval_solution(x, sol, N, M, K):
    """Clusters are disjoint runs in sorted order, ordered i1 <= j1 < i2 <= ..., enough points covered."""
    spans = []
    for c in sol.clusters:
        pos = sorted_positions(x, c.members)
        if pos != list(range(pos[0], pos[-1] + 1)):
            return False
        spans.append((pos[0], pos[-1]))
    spans.sort()
    for (a, b), (c, d) in zip(spans, spans[1:]):
        if not b < c:
            return False
    return sum(j - i for i, j in spans) >= N - M - K


def random_sweep(seed, count, n_range=(4, 10), k_range=(1, 3), m_range=(0, 3)):
    """Seeded (x, K, M) triples with K + M <= N."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        N = int(rng.integers(n_range[0], n_range[1] + 1))
        K = int(rng.integers(k_range[0], k_range[1] + 1))
        M = int(rng.integers(m_range[0], m_range[1] + 1))
        M = min(M, N - K)
        out.append((rng.uniform(-5, 5, N), K, M))
    return out
