"""Reference oracles and graph makers for the test suite.

Everything here is deliberately independent of the library's search and
oracle code paths: distances come from a plain Floyd-Warshall recurrence
and set queries from brute-force scans, so the tests cross-check two
implementations rather than one against itself.
"""
from __future__ import annotations

import numpy as np

from diamest import build_graph


def fw_apsp(g):
    """All-pairs distances by the Floyd-Warshall recurrence (float, inf)."""
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    if g.arc_count:
        rows = np.repeat(np.arange(n), np.diff(g.indptr))
        w = (np.ones(rows.size) if g.weights is None
             else g.weights.astype(np.float64))
        d[rows, g.indices] = np.minimum(d[rows, g.indices], w)
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


def fw_diameter(g):
    """(finite, D) from the Floyd-Warshall matrix."""
    d = fw_apsp(g)
    if np.isinf(d).any():
        return False, None
    return True, int(d.max())


def random_edges(rng, n, m, directed=False):
    cap = n * (n - 1) if directed else n * (n - 1) // 2
    m = min(m, cap)
    seen = {}
    while len(seen) < m:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        key = (u, v) if directed else (min(u, v), max(u, v))
        seen.setdefault(key, None)
    return list(seen)


def random_graph(rng, n, m, directed=False, weight_hi=0, connected=False):
    """Random graph built straight from sampled pairs (no generator module).

    With ``connected`` a random permutation backbone (path, or cycle when
    directed) guarantees a finite diameter.
    """
    edges = random_edges(rng, n, m, directed)
    if connected and n > 1:
        perm = rng.permutation(n)
        backbone = [(int(perm[i]), int(perm[i + 1])) for i in range(n - 1)]
        if directed:
            backbone.append((int(perm[-1]), int(perm[0])))
        have = set(edges)
        for u, v in backbone:
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key not in have:
                edges.append(key)
                have.add(key)
    if weight_hi:
        edges = [(u, v, int(rng.integers(1, weight_hi + 1))) for u, v in edges]
    return build_graph(n, edges, directed=directed)


def path_graph(n, weights=None):
    if weights is None:
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    return build_graph(n, [(i, i + 1, w) for i, w in zip(range(n - 1), weights)])


def cycle_graph(n, directed=False):
    if n == 2 and not directed:
        return build_graph(2, [(0, 1)])
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], directed=directed)


def complete_graph(n):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(n, center=0):
    return build_graph(n, [(center, v) for v in range(n) if v != center])


def decompose(d):
    """Split a diameter into (h, z) with d = 3h + z, z in {0, 1, 2}."""
    return d // 3, d % 3
