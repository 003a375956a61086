"""Regularization, dependent random choice and electrocution counts.

Every routine takes an explicit seed; the same inputs and seed always give
the same output.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..graph import Graph, VertexSet, iter_bits, min_degree_prune

Coverage = str | tuple[str, int]  # "exhaustive" or ("sampled", k)


def _common(rows: Sequence[int], vertices: Sequence[int], within: int) -> int:
    m = within
    for v in vertices:
        m &= rows[v]
    return m


@dataclass
class Regularized:
    vertices: VertexSet
    graph: Graph
    min_degree: int
    max_degree: int
    edges: int
    input_density: float
    density: float

    @property
    def ratio(self) -> float:
        if self.edges == 0:
            return float("inf") if self.graph.n else 0.0
        return self.max_degree / self.min_degree


def _density(g: Graph) -> float:
    return g.num_edges / (g.n * (g.n - 1) / 2) if g.n > 1 else 0.0


def _report(g: Graph, mask: int, input_density: float) -> Regularized:
    sub = g.induced(mask)
    degs = sub.degrees()
    return Regularized(VertexSet(mask), sub, min(degs, default=0), max(degs, default=0), sub.num_edges,
                       input_density, _density(sub))


def regularize(g: Graph, alpha: float = 1.0, max_ratio: float | None = None) -> Regularized:
    """An induced subgraph whose max/min degree ratio is at most ``max_ratio``.

    Each round prunes vertices below half the average degree, and if the
    ratio is still too large keeps only the dyadic degree bucket whose
    induced subgraph has the largest average degree.  ``max_ratio``
    defaults to 20 * 2**(1/alpha**2).  If no bucket keeps an edge the result
    is a single edge between two highest-degree neighbours.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if max_ratio is None:
        max_ratio = 20 * 2 ** (1 / alpha ** 2)
    dens = _density(g)
    alive = (1 << g.n) - 1
    while True:
        sub = g.induced(alive)
        if sub.num_edges == 0:
            break
        avg = Fraction(2 * sub.num_edges, sub.n)
        local = min_degree_prune(sub, max(Fraction(1), avg / 2))
        verts = list(iter_bits(alive))
        alive = sum(1 << verts[i] for i in local)
        rep = _report(g, alive, dens)
        if rep.edges and rep.ratio <= max_ratio:
            return rep
        buckets: dict[int, int] = {}
        for v in iter_bits(alive):
            d = (g.rows[v] & alive).bit_count()
            buckets[d.bit_length()] = buckets.get(d.bit_length(), 0) | (1 << v)
        best = max(buckets.values(), key=lambda m: (Fraction(g.edge_count_within(m), m.bit_count()), -m))
        if best == alive or g.edge_count_within(best) == 0:
            break
        alive = best
    # Nothing near-regular with edges survives: fall back to one edge.
    if g.num_edges == 0:
        return _report(g, 0, dens)
    degs = g.degrees()
    u, v = max(g.edges(), key=lambda e: (degs[e[0]] + degs[e[1]], -e[0], -e[1]))
    return _report(g, (1 << u) | (1 << v), dens)


def max_cut_partition(g: Graph) -> tuple[int, int]:
    """Greedy bipartition (L, R) with at least half of the edges crossing.

    Vertices are placed in index order on the side holding fewer of their
    placed neighbours, then single-vertex moves are made while they
    increase the cut.
    """
    left = right = 0
    for v in range(g.n):
        if (g.rows[v] & left).bit_count() <= (g.rows[v] & right).bit_count():
            left |= 1 << v
        else:
            right |= 1 << v
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            bit = 1 << v
            own, other = (left, right) if left & bit else (right, left)
            if (g.rows[v] & own).bit_count() > (g.rows[v] & other).bit_count():
                if left & bit:
                    left, right = left ^ bit, right | bit
                else:
                    left, right = left | bit, right ^ bit
                improved = True
    return left, right


@dataclass
class DrcResult:
    U1: VertexSet
    U2: VertexSet
    r: int
    t: int
    verified_bound: int
    coverage: Coverage
    target: float
    success: bool
    trial: int
    min_overlap: Fraction | None = None
    overlap_target: float | None = None


def _tuples(side: int, r: int, check: Coverage, rng: random.Random):
    verts = list(iter_bits(side))
    if check == "exhaustive":
        return itertools.combinations_with_replacement(verts, r)
    kind, k = check
    if kind != "sample":
        raise ValueError(f"unknown check mode {check!r}")
    return (tuple(rng.choice(verts) for _ in range(r)) for _ in range(k))


def _coverage(check) -> Coverage:
    return "exhaustive" if check == "exhaustive" else ("sampled", check[1])


def _min_common(rows, side: int, other: int, r: int, check, rng) -> int:
    best = None
    for tup in _tuples(side, r, check, rng):
        size = _common(rows, tup, other).bit_count()
        if best is None or size < best:
            best = size
    return best if best is not None else 0


def _prune_deficient(rows, side: int, other: int, r: int, need: float) -> int:
    """Delete one vertex (the last) of each r-tuple of ``side`` whose common
    neighbourhood in ``other`` is smaller than ``need``."""
    for tup in itertools.combinations_with_replacement(list(iter_bits(side)), r):
        if all(side >> u & 1 for u in tup) and _common(rows, tup, other).bit_count() < need:
            side &= ~(1 << tup[-1])
    return side


def dependent_random_choice(g: Graph, r: int, t: int, trials: int = 10, check: Coverage = "exhaustive",
                            seed: int = 0, keep_failures: bool = False) -> DrcResult | None:
    """Two-sided dependent random choice with target n**(1 - 1.8/t).

    Per trial: split V(G) by a greedy max cut into L and R, take the common
    neighbourhood in R of t random vertices of L (with repetition), drop one
    vertex of every r-tuple whose common neighbourhood in L is below target
    to get U1, then do the same from U1 back into L to get U2.  The first
    trial whose checked tuples on both sides meet the target is returned.
    With ``keep_failures`` the trial with the largest verified bound is
    returned even when it misses the target.
    """
    if r < 2 or t < 2:
        raise ValueError("r and t must be at least 2")
    rng = random.Random(seed)
    rows = g.rows
    n = g.n
    target = n ** (1 - 1.8 / t) if n else 0.0
    left, right = max_cut_partition(g)
    best = None
    for trial in range(trials):
        lv = list(iter_bits(left))
        if not lv:
            break
        a = _common(rows, [rng.choice(lv) for _ in range(t)], right)
        u1 = _prune_deficient(rows, a, left, r, target)
        u1v = list(iter_bits(u1))
        if not u1v:
            continue
        b = _common(rows, [rng.choice(u1v) for _ in range(t)], left)
        u2 = _prune_deficient(rows, b, u1, r, target)
        if not u2:
            continue
        bound = min(_min_common(rows, u1, u2, r, check, rng), _min_common(rows, u2, u1, r, check, rng))
        res = DrcResult(VertexSet(u1), VertexSet(u2), r, t, bound, _coverage(check), target, bound >= target, trial)
        if res.success:
            return res
        if best is None or bound > best.verified_bound:
            best = res
    return best if keep_failures else None


def _overlap_deficient(rows, side: int, other: int, r: int, need_size: float, need_frac: float,
                       prune: bool) -> tuple[int, int | None, Fraction | None]:
    """Scan r-tuples of ``side`` (with repetition) and extra vertices v in ``side``.

    Returns (side after pruning, min common size, min overlap fraction).
    """
    verts = list(iter_bits(side))
    min_size = None
    min_frac = None
    for tup in itertools.combinations_with_replacement(verts, r):
        if prune and not all(side >> u & 1 for u in tup):
            continue
        common = _common(rows, tup, other)
        size = common.bit_count()
        if min_size is None or size < min_size:
            min_size = size
        if size < need_size or size == 0:
            if prune:
                side &= ~(1 << tup[-1])
            continue
        for v in verts:
            if v in tup or (prune and not side >> v & 1):
                continue
            frac = Fraction((common & rows[v]).bit_count(), size)
            if min_frac is None or frac < min_frac:
                min_frac = frac
            if frac < need_frac and prune:
                side &= ~(1 << v)
    return side, min_size, min_frac


def eel_drc(g: Graph, r: int, t: int, seed: int = 0, q_left: int | None = None,
            q_right: int | None = None, trials: int = 1) -> DrcResult | None:
    """Two-round dependent random choice with both-sided overlap guarantees.

    Round one samples ``q_left`` (default 3*t*t*r) vertices of L with
    repetition, takes their common neighbourhood A in R, and deletes one
    vertex of every r-tuple of A whose common neighbourhood in L is below
    n**(1/2) and of every (tuple, v) whose overlap fraction is below
    n**(-1/(2r)), giving U1.  Round two samples ``q_right`` (default
    t*(r+2)) vertices of U1 and sets U2 to their common neighbourhood in L.
    The result is returned only if, on both sides, every r-tuple has at
    least n**(1/10) common neighbours on the other side and every further
    vertex of the same side sees at least an n**(-1/t) fraction of them.
    """
    if r < 2 or t < 2:
        raise ValueError("r and t must be at least 2")
    q_left = 3 * t * t * r if q_left is None else q_left
    q_right = t * (r + 2) if q_right is None else q_right
    rng = random.Random(seed)
    rows, n = g.rows, g.n
    size_target = n ** 0.1
    frac_target = n ** (-1 / t)
    left, right = max_cut_partition(g)
    lv = list(iter_bits(left))
    for trial in range(trials):
        if not lv:
            return None
        a = _common(rows, [rng.choice(lv) for _ in range(q_left)], right)
        u1, _, _ = _overlap_deficient(rows, a, left, r, n ** 0.5, n ** (-1 / (2 * r)), prune=True)
        u1v = list(iter_bits(u1))
        if not u1v:
            continue
        u2 = _common(rows, [rng.choice(u1v) for _ in range(q_right)], left)
        if not u2:
            continue
        _, s1, f1 = _overlap_deficient(rows, u1, u2, r, 0, 0, prune=False)
        _, s2, f2 = _overlap_deficient(rows, u2, u1, r, 0, 0, prune=False)
        bound = min(s1, s2)
        fracs = [f for f in (f1, f2) if f is not None]
        overlap = min(fracs) if fracs else None
        ok = bound >= size_target and (overlap is None or overlap >= frac_target)
        if ok:
            return DrcResult(VertexSet(u1), VertexSet(u2), r, t, bound, "exhaustive", size_target, True,
                             trial, overlap, frac_target)
    return None


@dataclass
class Electrocution:
    vertices: VertexSet
    threshold: Fraction

    @property
    def count(self) -> int:
        return len(self.vertices)


def electrocution(g: Graph, s: int, epsilon: float | Fraction, exclude: int = 0) -> Electrocution:
    """Every vertex outside ``exclude`` adjacent to at least epsilon*|S| vertices of S."""
    size = s.bit_count()
    if size < 1:
        raise ValueError("S must be nonempty")
    eps = Fraction(epsilon).limit_denominator(10 ** 9) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    need = eps * size
    out = 0
    for v in range(g.n):
        if not exclude >> v & 1 and (g.rows[v] & s).bit_count() >= need:
            out |= 1 << v
    return Electrocution(VertexSet(out), need)
