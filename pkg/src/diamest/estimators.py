"""Diameter approximation estimators with provable floors.

Every estimator returns an :class:`Estimate` whose value is the depth of a
real shortest-path tree (or a certified pair distance) in the input graph,
so the value never exceeds the true diameter.  The individual lower-bound
guarantees are documented per function in terms of the decomposition
D = 3h + z with h >= 0 and z in {0, 1, 2}.

All tie-breaks are by smallest vertex id and randomness is consumed only
in single-threaded setup (sampling), so a fixed seed and input yield a
bit-identical Estimate regardless of how the per-source searches are
scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, InfiniteDiameterError, finite_diameter_check
from .oracle import APSP_CAP_DEFAULT, exact_apsp
from .search import (IN, OUT, batch_depths, nearest_high_degree,
                     nearest_in_set, nearest_s, search, _bfs, _dijkstra,
                     _gather)

DEFAULT_SAMPLE_CONST = 2.0
DEFAULT_RERUN_CAP = 64

_FLIP = {OUT: IN, IN: OUT}


class RestartLimitError(RuntimeError):
    """The Las Vegas verification loop hit its safety cap (pathological)."""


@dataclass(frozen=True)
class Witness:
    """Certificate for an estimate.

    kind "tree": the estimate is the depth of the (source, direction)
    search tree.  kind "pair": the estimate is the certified lower bound
    for the scan pair (u, v).  kind "distance": the estimate came from a
    distance-oracle maximum at pair (a, b).
    """

    kind: str
    source: int | None = None
    direction: str | None = None
    pair: tuple[int, int] | None = None

    def describe(self) -> str:
        if self.kind == "tree":
            return f"tree:{self.direction}:{self.source}"
        return f"{self.kind}:{self.pair[0]},{self.pair[1]}"


@dataclass(frozen=True)
class Estimate:
    """An estimator's output: value, certificate and the parameters used."""

    value: int
    method: str
    witness: Witness
    reruns: int = 0
    params: tuple[tuple[str, object], ...] = ()

    def param(self, name, default=None):
        for key, val in self.params:
            if key == name:
                return val
        return default


def _params(**kw) -> tuple:
    return tuple(kw.items())


def _iceil(x: float) -> int:
    """Ceiling with a tiny backlash so 8**(1/3) style floats stay exact."""
    return max(1, math.ceil(x - 1e-9))


def _require_finite(g: Graph):
    if not finite_diameter_check(g):
        raise InfiniteDiameterError("graph has infinite diameter")


def _require_unweighted(g: Graph, what: str):
    if g.weighted:
        raise GraphError(f"{what} requires an unweighted graph")


def _clamp_s(g: Graph, s, default: int) -> int:
    if s is None:
        s = default
    return min(max(1, int(s)), g.n)


class _Deepest:
    """Running maximum over tree depths; ties keep the earliest offer and,
    inside one batch, the smallest source id."""

    __slots__ = ("depth", "source", "direction")

    def __init__(self):
        self.depth = -1
        self.source = 0
        self.direction = OUT

    def offer(self, depth: int, source: int, direction: str):
        if depth > self.depth:
            self.depth = depth
            self.source = source
            self.direction = direction

    def offer_batch(self, depths: np.ndarray, sources: np.ndarray, direction: str):
        if depths.size == 0:
            return
        top = int(depths.max())
        if top > self.depth:
            self.offer(top, int(sources[depths == top].min()), direction)

    def witness(self) -> Witness:
        return Witness("tree", source=self.source, direction=self.direction)


# ---- shared machinery -------------------------------------------------------

def _near_sets_all(g: Graph, s: int):
    """members[v], dists[v] = the s closest out-vertices of every v."""
    indptr, indices, weights = g.indptr, g.indices, g.weights
    members = np.empty((g.n, s), dtype=np.int64)
    mdists = np.empty((g.n, s), dtype=np.int64)
    for v in range(g.n):
        if weights is None:
            dist, order = _bfs(indptr, indices, g.n, v, limit=s)
        else:
            dist, order = _dijkstra(indptr, indices, weights, g.n, v, limit=s)
        if order.size < s:
            raise InfiniteDiameterError(
                f"graph has infinite diameter: vertex {v} reaches only "
                f"{order.size} vertices")
        members[v] = order[:s]
        mdists[v] = dist[members[v]]
    return members, mdists


def _greedy_hitting_set(members: np.ndarray, n: int) -> np.ndarray:
    """Deterministic greedy hitting set for the near-set family.

    Repeatedly picks the vertex contained in the most not-yet-hit sets
    (ties to the smallest id); size O((n/s) log n) by the usual covering
    argument since every set has s members.
    """
    n_sets, s = members.shape
    flat = members.ravel()
    rows = np.repeat(np.arange(n_sets), s)
    covered = np.zeros(n_sets, dtype=bool)
    picks = []
    while True:
        alive = ~covered[rows]
        if not alive.any():
            break
        counts = np.bincount(flat[alive], minlength=n)
        pick = int(np.argmax(counts))
        picks.append(pick)
        covered |= (members == pick).any(axis=1)
    return np.asarray(picks, dtype=np.int64)


def _aingworth_sweep(g: Graph, s: int):
    """One full run of the near-set estimator on ``g``.

    Computes every vertex's s-nearest out-set, searches outward from the
    vertex with the largest near-set radius, inward from that vertex's
    near set, and outward from a greedy hitting set of all near sets.
    Returns (tracker, members, member_dists); the latter two let callers
    reuse the truncated trees.
    """
    members, mdists = _near_sets_all(g, s)
    radii = mdists[:, -1]
    w = int(np.argmax(radii))
    tracker = _Deepest()
    tracker.offer(int(batch_depths(g, [w], OUT)[0]), w, OUT)
    near_w = members[w]
    tracker.offer_batch(batch_depths(g, near_w, IN), near_w, IN)
    hitters = _greedy_hitting_set(members, g.n)
    tracker.offer_batch(batch_depths(g, hitters, OUT), hitters, OUT)
    return tracker, members, mdists


# ---- estimators -------------------------------------------------------------

def two_approx(g: Graph) -> Estimate:
    """Max of the out- and in-eccentricity of vertex 0.

    Any vertex's eccentricity (in the better direction) is at least half
    the diameter, so ceil(D/2) <= value <= D.
    """
    _require_finite(g)
    tracker = _Deepest()
    tracker.offer(search(g, 0, OUT).depth, 0, OUT)
    tracker.offer(search(g, 0, IN).depth, 0, IN)
    return Estimate(tracker.depth, "two-approx", tracker.witness())


def aingworth(g: Graph, s: int | None = None) -> Estimate:
    """Deterministic near-set estimator (Aingworth et al. style).

    On unweighted graphs with D = 3h + z the value is at least 2h+z for
    z in {0, 1} and at least 2h+1 for z = 2, in particular always
    >= floor(2D/3).  Weighted input is accepted (Dijkstra searches) and
    stays upper-sound, but only the unweighted floor is guaranteed.
    Default s = ceil(sqrt(n)).
    """
    _require_finite(g)
    s = _clamp_s(g, s, _iceil(math.sqrt(g.n)))
    tracker, _, _ = _aingworth_sweep(g, s)
    return Estimate(tracker.depth, "aingworth", tracker.witness(),
                    params=_params(s=s))


def _sampled_core(g, s, seed, sample_const, max_reruns, method):
    _require_finite(g)
    n = g.n
    s = _clamp_s(g, s, _iceil(math.sqrt(n)))
    size = min(n, max(1, math.ceil(sample_const * (n / s) * math.log(n))))
    rng = np.random.default_rng(seed)
    for rerun in range(max_reruns + 1):
        sample = np.sort(rng.choice(n, size=size, replace=False))
        tracker = _Deepest()
        tracker.offer_batch(batch_depths(g, sample, OUT), sample, OUT)
        _, dist_to_sample = nearest_in_set(g, sample, OUT)
        w = int(np.argmax(dist_to_sample))
        tree_w = search(g, w, OUT)
        tracker.offer(tree_w.depth, w, OUT)
        near_w = tree_w.order[:s]
        if np.intersect1d(sample, near_w).size == 0:
            continue  # sample missed the near set: resample and rerun
        tracker.offer_batch(batch_depths(g, near_w, IN), near_w, IN)
        return Estimate(tracker.depth, method, tracker.witness(), rerun,
                        _params(s=s, seed=seed, sample_const=sample_const,
                                sample_size=size))
    raise RestartLimitError(
        f"hitting-sample verification failed {max_reruns + 1} times")


def sampled_estimate(g: Graph, s: int | None = None, seed: int = 0,
                     sample_const: float = DEFAULT_SAMPLE_CONST,
                     max_reruns: int = DEFAULT_RERUN_CAP) -> Estimate:
    """Las Vegas near-set estimator using a random hitting sample.

    Replaces the all-vertices near-set computation with a random sample of
    ceil(sample_const * (n/s) * ln n) vertices and pivots on the vertex
    farthest from the sample.  Before returning, verifies the sample
    actually hits the pivot's near set and reruns otherwise, so the
    returned value satisfies the same floors as :func:`aingworth`
    unconditionally; ``reruns`` records the restarts.
    """
    _require_unweighted(g, "sampled_estimate")
    return _sampled_core(g, s, seed, sample_const, max_reruns, "rv")


def sampled_estimate_weighted(g: Graph, s: int | None = None, seed: int = 0,
                              sample_const: float = DEFAULT_SAMPLE_CONST,
                              max_reruns: int = DEFAULT_RERUN_CAP) -> Estimate:
    """Weighted variant of :func:`sampled_estimate` (Dijkstra searches).

    Identical control flow; unweighted graphs degenerate to the unit-cost
    behavior.  Guarantees floor(2D/3) <= value <= D up to the snap of the
    path split to a vertex, which can cost one edge weight.
    """
    return _sampled_core(g, s, seed, sample_const, max_reruns, "rv-weighted")


def dense_estimate(g: Graph, s: int | None = None) -> Estimate:
    """Near-set estimator sharpened by a disjoint-trees pair scan.

    Runs the near-set sweep on the graph and its reverse, then scans all
    ordered pairs (u, v): when u's truncated out-tree and v's truncated
    in-tree share no vertex and no edge runs between them, every u-v path
    must cross both tree boundaries, certifying d(u, v) >= radius_out(u) +
    radius_in(v).  With D = 3h + z and h >= 1 the value is at least 2h+z
    for every z, i.e. >= ceil(2D/3).  Default s = ceil((m/n)^(1/3)).
    """
    _require_unweighted(g, "dense_estimate")
    _require_finite(g)
    n = g.n
    s = _clamp_s(g, s, _iceil((g.m / n) ** (1.0 / 3.0)) if g.m else 1)

    fwd_tr, fwd_members, fwd_dists = _aingworth_sweep(g, s)
    if g.directed:
        rev_tr, rev_members, rev_dists = _aingworth_sweep(g.reverse(), s)
    else:
        rev_tr, rev_members, rev_dists = fwd_tr, fwd_members, fwd_dists

    tracker = _Deepest()
    tracker.offer(fwd_tr.depth, fwd_tr.source, fwd_tr.direction)
    tracker.offer(rev_tr.depth, rev_tr.source, _FLIP[rev_tr.direction])
    value = tracker.depth
    witness = tracker.witness()

    radii_out = fwd_dists[:, -1]
    radii_in = rev_dists[:, -1]
    reach_bits = _reach_bitset(g, fwd_members, fwd_dists)
    in_bits = _tree_bitset(rev_members, rev_dists, n)
    max_in = int(radii_in.max())
    for u in range(n):
        if radii_out[u] + max_in <= value:
            continue
        allowed = ~np.bitwise_and(in_bits, reach_bits[u]).any(axis=1)
        if not allowed.any():
            continue
        top = int(radii_in[allowed].max())
        total = int(radii_out[u]) + top
        if total > value:
            v = int(np.flatnonzero(allowed & (radii_in == top))[0])
            value = total
            witness = Witness("pair", pair=(u, v))
    return Estimate(value, "dense", witness, params=_params(s=s))


def _truncated_tree(members_row, dists_row):
    """Vertices strictly inside the near-set radius (< s of them)."""
    return members_row[dists_row < dists_row[-1]]


def _tree_bitset(members, mdists, n):
    words = (n + 63) >> 6
    bits = np.zeros((len(members), words), dtype=np.uint64)
    for i in range(len(members)):
        verts = _truncated_tree(members[i], mdists[i])
        _set_bits(bits[i], verts)
    return bits


def _reach_bitset(g: Graph, members, mdists):
    """Bitsets of each truncated out-tree together with its out-neighbors.

    A pair passes the scan iff this closed reach is disjoint from the
    other side's tree: that encodes both "no shared vertex" and "no edge
    between the trees" in one word-wise AND.
    """
    words = (g.n + 63) >> 6
    bits = np.zeros((g.n, words), dtype=np.uint64)
    for u in range(g.n):
        verts = _truncated_tree(members[u], mdists[u])
        if verts.size:
            nbrs, _ = _gather(g.indptr, g.indices, verts)
            verts = np.concatenate([verts, nbrs])
        _set_bits(bits[u], verts)
    return bits


def _set_bits(row: np.ndarray, verts: np.ndarray):
    if verts.size:
        np.bitwise_or.at(row, verts >> 6,
                         np.uint64(1) << (verts & 63).astype(np.uint64))


def dense_condition_pairs(g: Graph, s: int):
    """Exhaustive list of (u, v, certified_bound) pairs the scan accepts.

    Verification helper: every returned bound must be a true lower bound
    on d(u, v).  Quadratic in n; intended for small graphs.
    """
    _require_unweighted(g, "dense_condition_pairs")
    _require_finite(g)
    s = _clamp_s(g, s, 1)
    _, fwd_members, fwd_dists = _aingworth_sweep(g, s)
    if g.directed:
        _, rev_members, rev_dists = _aingworth_sweep(g.reverse(), s)
    else:
        rev_members, rev_dists = fwd_members, fwd_dists
    reach_bits = _reach_bitset(g, fwd_members, fwd_dists)
    in_bits = _tree_bitset(rev_members, rev_dists, g.n)
    radii_out = fwd_dists[:, -1]
    radii_in = rev_dists[:, -1]
    hits = []
    for u in range(g.n):
        allowed = ~np.bitwise_and(in_bits, reach_bits[u]).any(axis=1)
        allowed[u] = False
        for v in np.flatnonzero(allowed):
            hits.append((u, int(v), int(radii_out[u] + radii_in[v])))
    return hits


def sparse_estimate(g: Graph, depth_hint: int, degree_threshold: int) -> Estimate:
    """Degree-threshold estimator for sparse graphs.

    Searches outward from every vertex of out-degree >= degree_threshold,
    picks the vertex w farthest from that set, and searches inward from
    the ball around w of radius min(depth_hint + 1, d(w, high-degree
    set)).  If depth_hint >= h (for D = 3h + z) the value is at least
    2h+z for every z; the value never exceeds D regardless.
    """
    _require_unweighted(g, "sparse_estimate")
    _require_finite(g)
    if depth_hint < 0:
        raise ValueError(f"depth_hint must be >= 0, got {depth_hint}")
    if degree_threshold < 1:
        raise ValueError(f"degree_threshold must be >= 1, got {degree_threshold}")
    tracker = _Deepest()
    high = np.flatnonzero(g.out_degrees >= degree_threshold)
    if high.size:
        tracker.offer_batch(batch_depths(g, high, OUT), high, OUT)
        _, dist_high = nearest_high_degree(g, degree_threshold)
        w = int(np.argmax(dist_high))
        radius = min(depth_hint + 1, int(dist_high[w]))
    else:
        w = 0
        radius = depth_hint + 1
    tree_w = search(g, w, OUT)
    tracker.offer(tree_w.depth, w, OUT)
    cut = np.searchsorted(tree_w.dist[tree_w.order], radius, side="right")
    ball = tree_w.order[:cut]
    tracker.offer_batch(batch_depths(g, ball, IN), ball, IN)
    return Estimate(tracker.depth, "sparse", tracker.witness(),
                    params=_params(htilde=depth_hint, delta=degree_threshold))


def sparse_driver(g: Graph) -> Estimate:
    """Self-tuning wrapper for :func:`sparse_estimate`.

    Derives the depth hint from a 2-approximation E: since E >= D/2 and
    h <= D/3, the integer floor(2E/3) is always >= h, which is exactly
    what :func:`sparse_estimate` needs for its floor.  The degree
    threshold follows as m**(1/(2*hint+3)); the result is always
    >= ceil(2D/3).
    """
    base = two_approx(g)
    hint = (2 * base.value) // 3
    threshold = _iceil(g.m ** (1.0 / (2 * hint + 3))) if g.m else 1
    est = sparse_estimate(g, hint, threshold)
    return Estimate(est.value, "sparse", est.witness,
                    params=_params(htilde=hint, delta=threshold,
                                   two_approx=base.value))


def four_fifths_estimate(g: Graph, distance_oracle=None) -> Estimate:
    """Undirected estimator with floor(4D/5) <= value <= D.

    ``distance_oracle`` maps a graph to (distance_matrix, additive_error)
    with additive_error in {0, 2}; by default the exact all-pairs oracle
    (error 0) stands in for an additive-2 scheme.  The oracle maximum
    minus its error bound is returned directly when it is >= 4; the value
    3 case falls back to the pair-scan estimator and <= 2 to the near-set
    estimator, which cover the remaining small diameters.
    """
    if g.directed:
        raise GraphError("four_fifths_estimate requires an undirected graph")
    _require_unweighted(g, "four_fifths_estimate")
    _require_finite(g)
    if distance_oracle is None:
        distance_oracle = lambda graph: (
            exact_apsp(graph, cap=max(graph.n, APSP_CAP_DEFAULT)), 0)
    dmat, err = distance_oracle(g)
    if err not in (0, 2):
        raise ValueError(f"additive error bound must be 0 or 2, got {err}")
    top = int(dmat.max())
    a, b = (int(x) for x in divmod(int(np.argmax(dmat)), g.n))
    dhat = max(0, top - err)
    if dhat >= 4:
        return Estimate(dhat, "four-fifths", Witness("distance", pair=(a, b)),
                        params=_params(eps=err, dhat=dhat, branch="direct"))
    if dhat == 3:
        sub = dense_estimate(g)
        branch = "dense"
    else:
        sub = aingworth(g)
        branch = "near"
    extra = _params(eps=err, dhat=dhat, branch=branch) + sub.params
    if sub.value > dhat:
        return Estimate(sub.value, "four-fifths", sub.witness, params=extra)
    return Estimate(dhat, "four-fifths", Witness("distance", pair=(a, b)),
                    params=extra)


def sampling_estimate(g: Graph, epsilon: float = 0.5, delta: float = 0.25,
                      seed: int = 0,
                      sample_const: float = DEFAULT_SAMPLE_CONST) -> Estimate:
    """Random-sample estimator for large diameters.

    Takes ceil(sample_const * n**(1-epsilon) * ln(n) / delta) random
    vertices (capped at n) and returns the deepest of their out/in trees.
    Always <= D; when D >= n**epsilon the value is >= (1-delta)*D with
    high probability, because some sample lands near a diameter endpoint.
    """
    if not (0 < epsilon < 1) or not (0 < delta < 1):
        raise ValueError("epsilon and delta must lie strictly between 0 and 1")
    _require_finite(g)
    n = g.n
    size = min(n, max(1, math.ceil(sample_const * n ** (1 - epsilon)
                                   * math.log(n) / delta)))
    rng = np.random.default_rng(seed)
    sample = np.sort(rng.choice(n, size=size, replace=False))
    tracker = _Deepest()
    tracker.offer_batch(batch_depths(g, sample, OUT), sample, OUT)
    tracker.offer_batch(batch_depths(g, sample, IN), sample, IN)
    return Estimate(tracker.depth, "sampling", tracker.witness(),
                    params=_params(epsilon=epsilon, delta=delta, seed=seed,
                                   sample_const=sample_const, sample_size=size))


# ---- witness verification ---------------------------------------------------

def recompute_witness(g: Graph, est: Estimate) -> int:
    """Recompute the quantity an estimate's witness certifies.

    Tree witnesses reproduce the value exactly with one search.  Scan-pair
    witnesses re-derive both truncated trees, re-check the disjointness
    condition and return the certified bound.  Distance witnesses return
    the exact pair distance (equal to the value for an error-0 oracle).
    """
    w = est.witness
    if w.kind == "tree":
        return search(g, w.source, w.direction).depth
    if w.kind == "pair":
        s = int(est.param("s"))
        u, v = w.pair
        out_near = nearest_s(g, u, s, OUT)
        in_near = nearest_s(g, v, s, IN)
        tree_out = _truncated_tree(out_near.members, out_near.member_dists)
        tree_in = _truncated_tree(in_near.members, in_near.member_dists)
        if np.intersect1d(tree_out, tree_in).size:
            raise ValueError("scan pair invalid: trees intersect")
        inside = set(tree_in.tolist())
        for x in tree_out:
            if any(int(y) in inside for y in g.neighbors(int(x))):
                raise ValueError("scan pair invalid: edge between trees")
        return out_near.radius + in_near.radius
    if w.kind == "distance":
        a, b = w.pair
        return int(search(g, a, OUT).dist[b])
    raise ValueError(f"unknown witness kind {w.kind!r}")
