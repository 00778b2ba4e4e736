"""Single-source search primitives consumed by every estimator.

Provides full and truncated breadth-first / Dijkstra searches with a fixed
(distance, id) settle order, extraction of the s closest vertices of a
vertex, and nearest-member-of-a-set computation done with one search from
a virtual super node.

Searches never mutate the graph; each owns a private distance array and
queue, so any number may run concurrently over one shared Graph.  Bulk
depth queries are delegated to scipy's per-source sweeps (breadth-first
for unweighted graphs, Dijkstra for weighted ones), which do the same
work in C.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import breadth_first_order as _scipy_bfs
from scipy.sparse.csgraph import dijkstra as _scipy_dijkstra

from .graph import Graph, InfiniteDiameterError, UNREACHED

OUT = "out"
IN = "in"

_EMPTY = np.empty(0, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SearchTree:
    """Result of one single-source search.

    ``dist`` holds exact distances with UNREACHED for unreached vertices;
    ``order`` lists the reached vertices sorted by (distance, id), so
    ``order[:s]`` is always the s closest with the canonical tie-break.
    """

    source: int
    direction: str
    dist: np.ndarray
    order: np.ndarray

    @property
    def depth(self) -> int:
        """Largest finite distance in the tree (0 for a lone vertex)."""
        return int(self.dist[self.order[-1]])

    @property
    def reached(self) -> int:
        return int(self.order.size)


@dataclass(frozen=True, eq=False)
class NearSet:
    """The s closest vertices of ``center`` in one direction.

    ``members`` are the first s entries of the full (distance, id) order;
    ``member_dists`` are their distances and ``radius`` is the largest one.
    """

    center: int
    direction: str
    s: int
    members: np.ndarray
    member_dists: np.ndarray

    @property
    def radius(self) -> int:
        return int(self.member_dists[-1])


def _forward_view(g: Graph, direction: str):
    """CSR arrays to traverse for the given direction (IN = reverse graph)."""
    if direction == OUT:
        return g.indptr, g.indices, g.weights
    if direction == IN:
        r = g.reverse()
        return r.indptr, r.indices, r.weights
    raise ValueError(f"direction must be {OUT!r} or {IN!r}, got {direction!r}")


def _gather(indptr, indices, frontier):
    """Concatenated adjacency rows of the frontier vertices."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return _EMPTY, counts
    base = np.repeat(starts, counts)
    within = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return indices[base + within], counts


def _bfs(indptr, indices, n, source, limit=None):
    """Level BFS; settles vertices in (distance, id) order.

    With ``limit`` the search stops after that many settles, trimming the
    last level by ascending id so truncation agrees with the tie-break.
    Returns (dist, order).
    """
    dist = np.full(n, UNREACHED, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    parts = [frontier]
    settled = 1
    level = 0
    while frontier.size and (limit is None or settled < limit):
        nbrs, _ = _gather(indptr, indices, frontier)
        if nbrs.size == 0:
            break
        nbrs = nbrs[dist[nbrs] == UNREACHED]
        new = np.unique(nbrs)
        if new.size == 0:
            break
        level += 1
        if limit is not None and settled + new.size > limit:
            new = new[: limit - settled]
        dist[new] = level
        parts.append(new)
        settled += new.size
        frontier = new
    return dist, np.concatenate(parts)


def _dijkstra(indptr, indices, weights, n, source, limit=None):
    """Binary-heap Dijkstra settling in (distance, id) order."""
    dist = np.full(n, UNREACHED, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    order = []
    heap = [(0, source)]
    dist[source] = 0
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        if limit is not None and len(order) >= limit:
            break
        row = slice(indptr[v], indptr[v + 1])
        for u, w in zip(indices[row], weights[row]):
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (int(nd), int(u)))
    dist[~done] = UNREACHED
    return dist, np.asarray(order, dtype=np.int64)


def search(g: Graph, v: int, direction: str = OUT) -> SearchTree:
    """Exact single-source distances from/to ``v`` (BFS or Dijkstra)."""
    if not (0 <= v < g.n):
        raise ValueError(f"source {v} out of range for n={g.n}")
    indptr, indices, weights = _forward_view(g, direction)
    if weights is None:
        dist, order = _bfs(indptr, indices, g.n, v)
    else:
        dist, order = _dijkstra(indptr, indices, weights, g.n, v)
    dist.setflags(write=False)
    order.setflags(write=False)
    return SearchTree(v, direction, dist, order)


def nearest_s(g: Graph, v: int, s: int, direction: str = OUT) -> NearSet:
    """The s closest vertices of ``v``, computed by a truncated search.

    Raises InfiniteDiameterError when fewer than s vertices are reachable
    (the toolkit assumes finite diameter wherever near sets are used).
    """
    if not (1 <= s <= g.n):
        raise ValueError(f"s must be in [1, {g.n}], got {s}")
    indptr, indices, weights = _forward_view(g, direction)
    if weights is None:
        dist, order = _bfs(indptr, indices, g.n, v, limit=s)
    else:
        dist, order = _dijkstra(indptr, indices, weights, g.n, v, limit=s)
    if order.size < s:
        raise InfiniteDiameterError(
            f"graph has infinite diameter: only {order.size} of {s} vertices "
            f"reachable {direction} of {v}")
    members = order[:s].copy()
    mdists = dist[members]
    members.setflags(write=False)
    mdists.setflags(write=False)
    return NearSet(v, direction, s, members, mdists)


def nearest_in_set(g: Graph, members, direction: str = OUT):
    """Closest member of a vertex set, for every vertex, in one search.

    Equivalent to attaching a virtual super node behind the set and running
    a single search from it; distances are reported without the auxiliary
    hop.  Direction OUT gives d(v, set) (the set member is the target), IN
    gives d(set, v).  Ties go to the smaller member id.

    Returns (closest, dist): int64 arrays with closest=-1/dist=UNREACHED
    for vertices that cannot reach (or be reached from) the set.
    """
    members = np.unique(np.asarray(members, dtype=np.int64))
    if members.size == 0:
        raise ValueError("member set must be nonempty")
    if members[0] < 0 or members[-1] >= g.n:
        raise ValueError("member out of range")
    # distance from v to the set is a distance in the reverse graph from
    # the set to v, so direction OUT traverses reversed arcs
    indptr, indices, weights = _forward_view(g, IN if direction == OUT else OUT)

    dist = np.full(g.n, UNREACHED, dtype=np.int64)
    closest = np.full(g.n, -1, dtype=np.int64)
    dist[members] = 0
    closest[members] = members

    if weights is None:
        frontier = members
        level = 0
        while frontier.size:
            nbrs, counts = _gather(indptr, indices, frontier)
            if nbrs.size == 0:
                break
            labels = np.repeat(closest[frontier], counts)
            keep = dist[nbrs] == UNREACHED
            nbrs, labels = nbrs[keep], labels[keep]
            if nbrs.size == 0:
                break
            # first occurrence after a (vertex, label) lexsort = minimum label
            pick = np.lexsort((labels, nbrs))
            nbrs, labels = nbrs[pick], labels[pick]
            first = np.ones(nbrs.size, dtype=bool)
            first[1:] = nbrs[1:] != nbrs[:-1]
            new, new_labels = nbrs[first], labels[first]
            level += 1
            dist[new] = level
            closest[new] = new_labels
            frontier = new
    else:
        done = np.zeros(g.n, dtype=bool)
        heap = [(0, int(u), int(u)) for u in members]
        heapq.heapify(heap)
        while heap:
            d, lbl, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            dist[v] = d
            closest[v] = lbl
            row = slice(indptr[v], indptr[v + 1])
            for u, w in zip(indices[row], weights[row]):
                if not done[u] and d + w <= dist[u]:
                    if d + w < dist[u]:
                        dist[u] = d + w
                    heapq.heappush(heap, (int(d + w), lbl, int(u)))
        dist[~done] = UNREACHED
        closest[~done] = -1
    return closest, dist


def nearest_high_degree(g: Graph, degree: int):
    """Closest vertex of out-degree >= ``degree``, for every vertex.

    An empty candidate set is legal: every vertex then maps to -1 with an
    UNREACHED distance.
    """
    cands = np.flatnonzero(g.out_degrees >= degree)
    if cands.size == 0:
        return (np.full(g.n, -1, dtype=np.int64),
                np.full(g.n, UNREACHED, dtype=np.int64))
    return nearest_in_set(g, cands, OUT)


# ---- bulk depth queries ----------------------------------------------------

_WALK_LIMIT = 128


def _bfs_depth_reach(mat, source: int):
    """Depth and reach count of one BFS tree, all heavy work in C.

    The deepest vertex is the last one in breadth-first visiting order;
    its level is recovered by walking the predecessor chain, falling back
    to pointer doubling over the whole forest for long diameters.
    """
    order, pred = _scipy_bfs(mat, source, directed=True,
                             return_predecessors=True)
    v = int(order[-1])
    depth = 0
    while pred[v] >= 0 and depth <= _WALK_LIMIT:
        v = int(pred[v])
        depth += 1
    if pred[v] < 0:
        return depth, int(order.size)
    ptr = pred.astype(np.int64)
    ptr[ptr < 0] = -1
    hops = (ptr >= 0).astype(np.int64)
    while True:
        live = ptr >= 0
        if not live.any():
            break
        ahead = ptr[live]
        hops[live] += hops[ahead]
        ptr[live] = ptr[ahead]
    return int(hops[order].max()), int(order.size)


def batch_search_stats(g: Graph, sources, direction: str = OUT):
    """Depths and reach counts for many sources at once.

    One independent per-source sweep per entry, run in C: breadth-first
    search for unweighted graphs, Dijkstra (chunked to bound memory) for
    weighted ones.  Returns (depths, reached) int64 arrays aligned with
    ``sources``.
    """
    if direction not in (OUT, IN):
        raise ValueError(f"bad direction {direction!r}")
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size == 0:
        return _EMPTY.copy(), _EMPTY.copy()
    base = g if direction == OUT else g.reverse()
    mat = base.scipy_matrix()
    depths = np.empty(sources.size, dtype=np.int64)
    reached = np.empty(sources.size, dtype=np.int64)
    if not g.weighted:
        for i, src in enumerate(sources):
            depths[i], reached[i] = _bfs_depth_reach(mat, int(src))
        return depths, reached
    chunk = max(1, int(8_000_000 // max(g.n, 1)))
    for lo in range(0, sources.size, chunk):
        part = sources[lo:lo + chunk]
        d = _scipy_dijkstra(mat, directed=True, indices=part)
        d = np.atleast_2d(d)
        finite = np.isfinite(d)
        depths[lo:lo + part.size] = np.where(finite, d, -1.0).max(axis=1).astype(np.int64)
        reached[lo:lo + part.size] = finite.sum(axis=1)
    return depths, reached


def batch_depths(g: Graph, sources, direction: str = OUT) -> np.ndarray:
    """Depth of the search tree of every source (max finite distance)."""
    return batch_search_stats(g, sources, direction)[0]
