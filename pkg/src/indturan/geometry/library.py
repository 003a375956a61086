"""Named pattern graphs built from small incidence configurations."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..canon import canonical_key
from ..generators import bipartite_from_incidence, cycle
from ..graph import Graph
from ..search import Mode, Pattern, find_embedding
from .plane import pg2

# Pappus 9_3: points A1 A2 A3 B1 B2 B3 C1 C2 C3 = 0..8.
PAPPUS_LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (1, 6, 5), (2, 6, 4), (0, 7, 5),
    (2, 7, 3), (0, 8, 4), (1, 8, 3),
)

# Desargues 10_3: O A1 A2 A3 B1 B2 B3 P12 P13 P23 = 0..9.
DESARGUES_LINES = (
    (0, 1, 4), (0, 2, 5), (0, 3, 6),
    (1, 2, 7), (1, 3, 8), (2, 3, 9),
    (4, 5, 7), (4, 6, 8), (5, 6, 9),
    (7, 8, 9),
)


@dataclass(frozen=True)
class NamedPattern:
    name: str
    graph: Graph
    girth: int
    degeneracy: int

    @property
    def pattern(self) -> Pattern:
        return Pattern(self.graph)


def delete_first_edge(g: Graph) -> Graph:
    u, v = next(iter(g.edges()))
    return g.with_edges(remove=[(u, v)])


def single_edge_deletions_isomorphic(g: Graph) -> bool:
    keys = {canonical_key(g.with_edges(remove=[e])) for e in g.edges()}
    return len(keys) == 1


def _heawood() -> Graph:
    return pg2(2).graph


def _pappus() -> Graph:
    return bipartite_from_incidence(9, PAPPUS_LINES)


def _desargues() -> Graph:
    return bipartite_from_incidence(10, DESARGUES_LINES)


_CATALOG = {
    "heawood": lambda: NamedPattern("heawood", _heawood(), 6, 3),
    "heawood_minus": lambda: NamedPattern("heawood_minus", delete_first_edge(_heawood()), 6, 2),
    # The Fano plane's incidence graph is the Heawood graph.
    "fano": lambda: NamedPattern("fano", _heawood(), 6, 3),
    "pappus": lambda: NamedPattern("pappus", _pappus(), 6, 3),
    "pappus_minus": lambda: NamedPattern("pappus_minus", delete_first_edge(_pappus()), 6, 2),
    "desargues": lambda: NamedPattern("desargues", _desargues(), 6, 3),
    "desargues_minus": lambda: NamedPattern("desargues_minus", delete_first_edge(_desargues()), 6, 2),
}

CATALOG_NAMES = tuple(_CATALOG) + ("cycle(2k)",)

_CYCLE = re.compile(r"^(?:cycle\(?|c)(\d+)\)?$")


def pattern_library(name: str) -> NamedPattern:
    key = name.strip().lower().replace("-", "_")
    if key in _CATALOG:
        return _CATALOG[key]()
    m = _CYCLE.match(key)
    if m:
        length = int(m.group(1))
        if length >= 4 and length % 2 == 0:
            return NamedPattern(f"cycle({length})", cycle(length), length, 2)
        raise ValueError(f"cycle patterns must have even length >= 4, got {length}")
    raise ValueError(f"unknown pattern {name!r}; available: {', '.join(CATALOG_NAMES)}")


@dataclass
class AbsenceRow:
    q: int
    pattern: str
    subgraph_present: bool
    induced_present: bool
    seconds: float


def induced_absence_report(q_list: Iterable[int], patterns: Sequence[str | NamedPattern],
                           use_symmetry: bool = True) -> list[AbsenceRow]:
    """Exhaustive subgraph and induced searches of each pattern in each PG(2,q)."""
    named = [pattern_library(p) if isinstance(p, str) else p for p in patterns]
    rows = []
    for q in q_list:
        plane = pg2(q)
        sym = plane.symmetry() if use_symmetry else None
        for np_ in named:
            t0 = time.perf_counter()
            pat = np_.pattern
            sub = find_embedding(plane.graph, pat, Mode.SUBGRAPH, symmetry=sym) is not None
            ind = sub and find_embedding(plane.graph, pat, Mode.INDUCED, symmetry=sym) is not None
            rows.append(AbsenceRow(q, np_.name, sub, ind, time.perf_counter() - t0))
    return rows
