"""Seeded graph generators for the test and benchmark corpus.

Every family is a pure function of its GenSpec: the PRNG is numpy's PCG64
(recorded as PRNG_NAME in emitted metadata) keyed by the 64-bit seed, so
a spec regenerates the identical graph byte for byte.  Random families are
post-processed to guarantee a finite diameter: after a few resampling
attempts a random Hamiltonian backbone is overlaid (a path for undirected
graphs, a cycle for directed ones, which plain paths cannot make strongly
connected).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, build_graph, finite_diameter_check

PRNG_NAME = "numpy-pcg64"
CONNECT_RETRIES = 8

FAMILIES = ("gnm", "gnp", "path", "cycle", "star", "complete", "grid",
            "barbell", "bounded_degree")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance."""

    family: str
    n: int
    m: int | None = None
    p: float | None = None
    max_degree: int | None = None
    weight_range: tuple[int, int] | None = None
    seed: int = 0
    directed: bool = False
    clique: int | None = None    # barbell: size of each end clique
    path_len: int | None = None  # barbell: number of bridge edges


def _pair_capacity(n: int, directed: bool) -> int:
    return n * (n - 1) if directed else n * (n - 1) // 2


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.default_rng(np.random.PCG64(spec.seed))


def _sample_pairs(rng, n, m, directed):
    """m distinct non-loop vertex pairs, unordered unless directed."""
    chosen = {}
    while len(chosen) < m:
        need = m - len(chosen)
        us = rng.integers(0, n, size=2 * need + 8)
        vs = rng.integers(0, n, size=2 * need + 8)
        for u, v in zip(us, vs):
            if u == v:
                continue
            key = (int(u), int(v)) if directed else (min(int(u), int(v)), max(int(u), int(v)))
            if key not in chosen:
                chosen[key] = None
                if len(chosen) == m:
                    break
    return list(chosen)


def _backbone(rng, n, directed):
    """Random Hamiltonian path (undirected) or cycle (directed)."""
    perm = rng.permutation(n)
    edges = [(int(perm[i]), int(perm[i + 1])) for i in range(n - 1)]
    if directed and n > 1:
        edges.append((int(perm[-1]), int(perm[0])))
    return edges


def _connected_random(spec, rng, sampler):
    for _ in range(CONNECT_RETRIES):
        g = build_graph(spec.n, sampler(rng), directed=spec.directed)
        if finite_diameter_check(g):
            return g
    edges = sampler(rng) + _backbone(rng, spec.n, spec.directed)
    g = build_graph(spec.n, edges, directed=spec.directed)
    if not finite_diameter_check(g):
        raise RuntimeError("backbone overlay failed to connect the graph")
    return g


def _grid_dims(n: int) -> tuple[int, int]:
    r = int(math.isqrt(n))
    while r > 1 and n % r:
        r -= 1
    return r, n // r


def generate(spec: GenSpec) -> Graph:
    """Emit the graph a GenSpec describes; deterministic in spec.seed."""
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(spec)
    n = spec.n
    fam = spec.family

    if fam in ("gnm", "gnp", "bounded_degree"):
        g = _random_family(spec, rng)
    else:
        if spec.directed and fam not in ("cycle", "complete"):
            raise ValueError(f"family {fam!r} is undirected-only")
        g = _structured_family(spec)

    if spec.weight_range is not None:
        lo, hi = spec.weight_range
        if not (0 <= lo <= hi):
            raise ValueError(f"bad weight range {spec.weight_range}")
        g = _attach_weights(g, rng, lo, hi)
    return g


def _random_family(spec: GenSpec, rng) -> Graph:
    n = spec.n
    if spec.family == "gnm":
        if spec.m is None:
            raise ValueError("gnm needs m")
        cap = _pair_capacity(n, spec.directed)
        if spec.m > cap:
            raise ValueError(f"m={spec.m} exceeds {cap} possible edges")
        return _connected_random(spec, rng,
                                 lambda r: _sample_pairs(r, n, spec.m, spec.directed))
    if spec.family == "gnp":
        if spec.p is None or not (0 <= spec.p <= 1):
            raise ValueError("gnp needs p in [0, 1]")
        if n > 8192:
            raise ValueError("gnp draws an n*n Bernoulli matrix; use gnm past n=8192")

        def sampler(r):
            if spec.directed:
                mask = r.random((n, n)) < spec.p
                np.fill_diagonal(mask, False)
                us, vs = np.nonzero(mask)
            else:
                mask = np.triu(r.random((n, n)) < spec.p, k=1)
                us, vs = np.nonzero(mask)
            return list(zip(us.tolist(), vs.tolist()))

        return _connected_random(spec, rng, sampler)
    # bounded_degree: Hamiltonian backbone plus random edges that respect
    # the degree bound
    if spec.max_degree is None or spec.max_degree < 2:
        raise ValueError("bounded_degree needs max_degree >= 2")
    target = spec.m if spec.m is not None else n
    deg_cap = spec.max_degree
    backbone = _backbone(rng, n, spec.directed)
    if not spec.directed:
        backbone = [(min(u, v), max(u, v)) for u, v in backbone]
    edges = set(backbone)
    deg = np.zeros(n, dtype=np.int64)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    attempts = 0
    while len(edges) < target and attempts < 20 * target:
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or deg[u] >= deg_cap or deg[v] >= deg_cap:
            continue
        key = (u, v) if spec.directed else (min(u, v), max(u, v))
        if key in edges:
            continue
        edges.add(key)
        deg[u] += 1
        deg[v] += 1
    g = build_graph(n, sorted(edges), directed=spec.directed)
    if not finite_diameter_check(g):
        raise RuntimeError("bounded_degree backbone failed to connect")
    return g


def _structured_family(spec: GenSpec) -> Graph:
    n = spec.n
    fam = spec.family
    if fam == "path":
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if fam == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)] if n > 2 or spec.directed \
            else [(i, i + 1) for i in range(n - 1)]
        return build_graph(n, edges, directed=spec.directed)
    if fam == "star":
        return build_graph(n, [(0, i) for i in range(1, n)])
    if fam == "complete":
        if spec.directed:
            edges = [(u, v) for u in range(n) for v in range(n) if u != v]
        else:
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return build_graph(n, edges, directed=spec.directed)
    if fam == "grid":
        rows, cols = _grid_dims(n)
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return build_graph(n, edges)
    if fam == "barbell":
        if spec.clique is None and spec.path_len is None:
            if n < 4:
                raise ValueError("barbell needs n >= 4")
            c = max(2, n // 3)
            bridge = n - 2 * c + 1
        else:
            c = spec.clique if spec.clique is not None else 2
            bridge = spec.path_len if spec.path_len is not None else 1
        if c < 2 or bridge < 1:
            raise ValueError("barbell needs clique >= 2 and path_len >= 1")
        total = 2 * c + bridge - 1
        if spec.clique is not None and n != total:
            raise ValueError(
                f"barbell with clique={c}, path_len={bridge} has {total} "
                f"vertices, but n={n} was given")
        edges = []
        for u in range(c):
            for v in range(u + 1, c):
                edges.append((u, v))
                edges.append((c + bridge - 1 + u, c + bridge - 1 + v))
        # bridge from the last vertex of clique A to the first of clique B
        chain = [c - 1] + list(range(c, c + bridge - 1)) + [c + bridge - 1]
        edges.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
        return build_graph(total, edges)
    raise AssertionError(fam)


def _attach_weights(g: Graph, rng, lo: int, hi: int) -> Graph:
    rows = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    cols = g.indices
    if not g.directed:
        keep = rows < cols
        rows, cols = rows[keep], cols[keep]
    wts = rng.integers(lo, hi + 1, size=rows.size)
    edges = list(zip(rows.tolist(), cols.tolist(), wts.tolist()))
    return build_graph(g.n, edges, directed=g.directed)


def spec_metadata(spec: GenSpec) -> str:
    """Comment block recording how an emitted graph was produced."""
    fields = [f"family={spec.family}", f"n={spec.n}"]
    if spec.m is not None:
        fields.append(f"m={spec.m}")
    if spec.p is not None:
        fields.append(f"p={spec.p}")
    if spec.max_degree is not None:
        fields.append(f"max_degree={spec.max_degree}")
    if spec.weight_range is not None:
        fields.append(f"weights={spec.weight_range[0]}:{spec.weight_range[1]}")
    if spec.clique is not None:
        fields.append(f"clique={spec.clique}")
    if spec.path_len is not None:
        fields.append(f"path_len={spec.path_len}")
    fields.append(f"seed={spec.seed}")
    fields.append(f"directed={int(spec.directed)}")
    fields.append(f"prng={PRNG_NAME}")
    return "# " + " ".join(fields) + "\n"
