"""Host automorphism groups used to break symmetry in exhaustive searches.

If ``G`` is a group of host automorphisms fixing the images chosen so far,
two candidates in one ``G``-orbit root isomorphic search subtrees, so only
one per orbit needs exploring.  Pointwise stabilisers come from sympy's
Schreier-Sims with the chosen images as a prescribed base prefix.
"""

from __future__ import annotations

from typing import Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from .graph import Graph, iter_bits


class HostSymmetry:
    def __init__(self, host: Graph, generators: Sequence[Sequence[int]], max_depth: int = 6):
        self.host = host
        self.max_depth = max_depth
        gens = [list(g) for g in generators]
        for k, g in enumerate(gens):
            if sorted(g) != list(range(host.n)):
                raise ValueError(f"generator {k} is not a permutation of the host vertices")
            for v, row in enumerate(host.rows):
                image = 0
                for u in iter_bits(row):
                    image |= 1 << g[u]
                if host.rows[g[v]] != image:
                    raise ValueError(f"generator {k} is not an automorphism of the host")
        self.generators = gens
        self._group = PermutationGroup([Permutation(g) for g in gens]) if gens else None
        self._cache: dict[tuple[int, ...], list[int] | None] = {}

    def order(self) -> int:
        return 1 if self._group is None else int(self._group.order())

    def _orbit_labels(self, prefix: tuple[int, ...]) -> list[int] | None:
        """Orbit label per vertex under the pointwise stabiliser of ``prefix``; None if trivial."""
        if prefix in self._cache:
            return self._cache[prefix]
        labels = None
        if self._group is not None:
            if prefix:
                base, strong = self._group.schreier_sims_incremental(base=list(prefix))
                if list(base[: len(prefix)]) != list(prefix):
                    gens = []
                else:
                    gens = [g.array_form for g in strong if all(g.array_form[p] == p for p in prefix)]
            else:
                gens = self.generators
            gens = [g for g in gens if any(g[v] != v for v in range(len(g)))]
            if gens:
                labels = _orbits(self.host.n, gens)
        self._cache[prefix] = labels
        return labels

    def representatives(self, prefix: tuple[int, ...], candidates: int) -> int:
        """Subset of ``candidates`` keeping the smallest member of each orbit."""
        if len(prefix) >= self.max_depth:
            return candidates
        labels = self._orbit_labels(prefix)
        if labels is None:
            return candidates
        seen = set()
        out = 0
        for v in iter_bits(candidates):
            if labels[v] not in seen:
                seen.add(labels[v])
                out |= 1 << v
        return out

    def trivial_at(self, prefix: tuple[int, ...]) -> bool:
        return len(prefix) >= self.max_depth or self._orbit_labels(prefix) is None


def _orbits(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]
