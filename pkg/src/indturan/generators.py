"""Small named graphs and seeded random hosts."""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .graph import Graph, iter_bits


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def edge_plus_isolated() -> Graph:
    """One edge and a third isolated vertex."""
    return Graph.from_edges(3, [(0, 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    rows = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph._trusted(offset, rows)


def glue_at_root(h: Graph, root: int, copies: int) -> Graph:
    """``copies`` disjoint copies of ``h`` identified at ``root`` (vertex 0 of the result)."""
    others = [v for v in range(h.n) if v != root]
    edges = []
    for c in range(copies):
        label = {root: 0}
        for i, v in enumerate(others):
            label[v] = 1 + c * len(others) + i
        edges.extend((label[u], label[v]) for u, v in h.edges())
    return Graph.from_edges(1 + copies * len(others), edges)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_c4_free(n: int, seed: int, target_edges: int | None = None) -> Graph:
    """Random greedy K_{2,2}-free graph: scan shuffled pairs, keep those closing no 4-cycle."""
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    rows = [0] * n
    m = 0
    for u, v in pairs:
        if target_edges is not None and m >= target_edges:
            break
        # Any new 4-cycle is u-v-y-x with x in N(u), y in N(v) and x ~ y.
        nu = rows[u] & ~(1 << v)
        nv = rows[v] & ~(1 << u)
        if any(rows[y] & nu for y in iter_bits(nv)):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        m += 1
    return Graph._trusted(n, rows)


def bipartite_from_incidence(points: int, blocks: Sequence[Sequence[int]]) -> Graph:
    """Levi graph: vertices 0..points-1 are points, then one vertex per block."""
    edges = [(p, points + b) for b, block in enumerate(blocks) for p in block]
    return Graph.from_edges(points + len(blocks), edges)
