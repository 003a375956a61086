"""Canonical labelling by partition refinement and individualisation.

The canonical form is the lexicographically largest relabelled adjacency
among the leaves of the search tree.  Two pruning rules keep the tree small:
a leaf equal to the first leaf yields an automorphism and abandons the
subtree back to where it left the first path, and children in one orbit of
the known automorphisms fixing the current prefix are explored only once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, iter_bits

Cells = list[list[int]]


@dataclass(frozen=True)
class Canonical:
    key: tuple[int, ...]
    labeling: tuple[int, ...]  # labeling[i] = vertex placed at canonical position i
    automorphisms: tuple[tuple[int, ...], ...]

    def graph(self, n: int) -> Graph:
        return Graph._trusted(n, self.key)


def _mask(cell: list[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(rows: tuple[int, ...], cells: Cells) -> Cells:
    """Coarsest equitable refinement, splitting cells by neighbour counts."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        s = 0
        while s < len(cells):
            w = _mask(cells[s])
            out: Cells = []
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                groups: dict[int, list[int]] = {}
                for v in c:
                    groups.setdefault((rows[v] & w).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(c)
                else:
                    changed = True
                    for k in sorted(groups):
                        out.append(groups[k])
            cells = out
            s += 1
    return cells


def _leaf_key(rows: tuple[int, ...], perm: list[int]) -> tuple[int, ...]:
    pos = [0] * len(perm)
    for i, v in enumerate(perm):
        pos[v] = i
    key = []
    for v in perm:
        r = 0
        for u in iter_bits(rows[v]):
            r |= 1 << pos[u]
        key.append(r)
    return tuple(key)


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.n
        self.first_path: list[int] | None = None
        self.first_perm: list[int] | None = None
        self.first_key = None
        self.best_key = None
        self.best_perm: list[int] | None = None
        self.autos: list[list[int]] = []

    def _orbit_root(self, prefix: list[int]):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.autos:
            if all(a[p] == p for p in prefix):
                for v in range(self.n):
                    x, y = find(v), find(a[v])
                    if x != y:
                        parent[max(x, y)] = min(x, y)
        return find

    def run(self, cells: Cells, prefix: list[int]) -> int | None:
        """Explore; returns a depth to unwind to, or None to continue normally."""
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._leaf([c[0] for c in cells], prefix)
        depth = len(prefix)
        tried: list[int] = []
        for v in sorted(cells[target]):
            if tried:
                find = self._orbit_root(prefix)
                if any(find(u) == find(v) for u in tried):
                    continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            jump = self.run(refine(self.rows, child), prefix + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def _leaf(self, perm: list[int], prefix: list[int]) -> int | None:
        key = _leaf_key(self.rows, perm)
        if self.first_perm is None:
            self.first_perm, self.first_key, self.first_path = perm, key, prefix
            self.best_perm, self.best_key = perm, key
            return None
        if key == self.first_key:
            self._record(self.first_perm, perm)
            # Unwind to the node where this path left the first path.
            d = 0
            while d < len(prefix) and d < len(self.first_path) and prefix[d] == self.first_path[d]:
                d += 1
            return d
        if key == self.best_key:
            self._record(self.best_perm, perm)
        elif key > self.best_key:
            self.best_perm, self.best_key = perm, key
        return None

    def _record(self, a: list[int], b: list[int]) -> None:
        # a[i] and b[i] sit at the same canonical position, so a[i] -> b[i] is an automorphism.
        gamma = [0] * self.n
        for x, y in zip(a, b):
            gamma[x] = y
        self.autos.append(gamma)


def canonical(g: Graph) -> Canonical:
    if g.n == 0:
        return Canonical((), (), ())
    s = _Search(g)
    s.run(refine(g.rows, [list(range(g.n))]), [])
    return Canonical(s.best_key, tuple(s.best_perm), tuple(tuple(a) for a in s.autos))


def canonical_key(g: Graph) -> tuple[int, ...]:
    return canonical(g).key


def canonical_graph(g: Graph) -> Graph:
    return Graph._trusted(g.n, canonical(g).key)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_key(a) == canonical_key(b)
