"""Undirected simple graphs stored as rows of an adjacency bit-matrix.

Row ``v`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge, so
neighbourhood intersections are a single ``&``.  Graphs are immutable and
hashable; every operation that "changes" a graph returns a new one.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 4096


class VertexSet(int):
    """A set of vertices encoded as a bitmask.

    It is an ``int`` (so ``&``, ``|`` and friends keep working on the raw
    mask) that also iterates over its members in ascending order.
    """

    def __new__(cls, mask: int = 0) -> "VertexSet":
        if mask < 0:
            raise ValueError("vertex masks are nonnegative")
        return super().__new__(cls, mask)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            if v < 0:
                raise ValueError(f"negative vertex {v}")
            mask |= 1 << v
        return cls(mask)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self)

    def __len__(self) -> int:
        return self.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool((self >> v) & 1)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"

    def tolist(self) -> list[int]:
        return list(iter_bits(self))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bits(mask: int, count: int) -> int:
    """The ``count`` least significant set bits of ``mask``."""
    out = 0
    while mask and count:
        low = mask & -mask
        out |= low
        mask ^= low
        count -= 1
    return out


class Graph:
    __slots__ = ("n", "rows", "_m", "_hash")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0 or n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full or row < 0:
                raise ValueError(f"row {v} has bits outside the vertex range")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        self._init(n, tuple(rows))

    def _init(self, n: int, rows: tuple[int, ...]) -> None:
        self.n = n
        self.rows = rows
        self._m = None
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        # Skips validation; only for rows produced by code in this package.
        g = cls.__new__(cls)
        g._init(n, tuple(rows))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge ({u}, {v}) outside [0, {n})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    @property
    def num_edges(self) -> int:
        if self._m is None:
            self._m = sum(r.bit_count() for r in self.rows) // 2
        return self._m

    @property
    def vertices(self) -> VertexSet:
        return VertexSet((1 << self.n) - 1)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} outside [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> VertexSet:
        self._check(v)
        return VertexSet(self.rows[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not (self.rows[u] >> v) & 1:
                    out.append((u, v))
        return out

    def with_edges(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> "Graph":
        rows = list(self.rows)
        for u, v in remove:
            self._check(u)
            self._check(v)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        for u, v in add:
            self._check(u)
            self._check(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph._trusted(self.n, rows)

    def induced(self, vertices: Iterable[int] | int) -> "Graph":
        """Induced subgraph, relabelled so the kept vertices keep their relative order."""
        keep = list(iter_bits(vertices)) if isinstance(vertices, int) else sorted(set(vertices))
        for v in keep:
            self._check(v)
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for u in iter_bits(self.rows[v]):
                i = index.get(u)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return Graph._trusted(len(keep), rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabelling must be a permutation of the vertices")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            new = 0
            for u in iter_bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph._trusted(self.n, rows)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph._trusted(self.n, [full & ~r & ~(1 << v) for v, r in enumerate(self.rows)])

    def edge_count_within(self, mask: int) -> int:
        return sum((self.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def to_graph6(self) -> str:
        from .graph6 import encode

        return encode(self)

    @classmethod
    def from_graph6(cls, text: str) -> "Graph":
        from .graph6 import decode

        return decode(text)


def _peel(g: Graph, threshold) -> int:
    """Delete vertices of degree < threshold until none remain; returns survivors."""
    deg = g.degrees()
    alive = (1 << g.n) - 1
    stack = [v for v in range(g.n) if deg[v] < threshold]
    dead = 0
    for v in stack:
        dead |= 1 << v
    while stack:
        v = stack.pop()
        alive &= ~(1 << v)
        for u in iter_bits(g.rows[v] & alive & ~dead):
            deg[u] -= 1
            if deg[u] < threshold:
                dead |= 1 << u
                stack.append(u)
    return alive


def k_core(g: Graph, k: int) -> VertexSet:
    """Vertex set of the k-core: the largest induced subgraph with minimum degree >= k."""
    if k < 1:
        raise ValueError("k must be positive")
    return VertexSet(_peel(g, k))


def min_degree_prune(g: Graph, threshold: float | Fraction) -> VertexSet:
    """Fixpoint of deleting any vertex whose degree among survivors is below ``threshold``.

    If ``threshold <= e(G)/n`` the result is nonempty whenever G has an edge,
    because each deletion removes fewer than ``threshold`` edges.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    return VertexSet(_peel(g, threshold))


@dataclass(frozen=True)
class DegeneracyOrder:
    """``order`` lists vertices so each has at most ``degeneracy`` earlier neighbours."""

    order: tuple[int, ...]
    back_degree: tuple[int, ...]
    degeneracy: int

    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    # Min-degree peeling, ties to the lowest index.  The embedding order is the
    # reverse of the peeling order: a peeled vertex only sees later-peeled ones.
    deg = g.degrees()
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = 0
    peeled = []
    back = [0] * g.n
    while heap:
        d, v = heapq.heappop(heap)
        if (removed >> v) & 1 or d != deg[v]:
            continue
        removed |= 1 << v
        peeled.append(v)
        back[v] = d
        for u in iter_bits(g.rows[v] & ~removed):
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    order = tuple(reversed(peeled))
    return DegeneracyOrder(order, tuple(back), max(back, default=0))


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g).degeneracy


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests), by BFS from every vertex."""
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(g.rows[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def common_neighborhood(g: Graph, vertices: Sequence[int]) -> VertexSet:
    """Intersection of N(u) over the given (not necessarily distinct) vertices."""
    if len(vertices) == 0:
        raise ValueError("need at least one vertex")
    mask = (1 << g.n) - 1
    for v in vertices:
        g._check(v)
        mask &= g.rows[v]
    return VertexSet(mask)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[tuple[int, ...], ...]
    coloring: tuple[int, ...] | None
    odd_cycle: tuple[int, ...] | None

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None

    def sides(self) -> tuple[VertexSet, VertexSet]:
        if self.coloring is None:
            raise ValueError("graph is not bipartite")
        left = VertexSet.of(v for v, c in enumerate(self.coloring) if c == 0)
        right = VertexSet.of(v for v, c in enumerate(self.coloring) if c == 1)
        return left, right


def components_and_bipartition(g: Graph) -> Decomposition:
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    components = []
    odd = None
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.rows[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    comp.append(w)
                    queue.append(w)
                elif color[w] == color[u] and odd is None:
                    odd = _odd_cycle(u, w, parent, depth)
        components.append(tuple(sorted(comp)))
    if odd is not None:
        return Decomposition(tuple(components), None, odd)
    return Decomposition(tuple(components), tuple(color), None)


def _odd_cycle(u: int, w: int, parent: list[int], depth: list[int]) -> tuple[int, ...]:
    # BFS same-colour edges join equal depths, so walking both ends up in step
    # meets at their lowest common ancestor.
    left, right = [u], [w]
    a, b = u, w
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return tuple(left + right[::-1])
