"""The fixed constraint battery shared by the extremal and acceptance tests."""

from indturan import Mode, Pattern
from indturan.extremal import ConstraintSet, InducedForbidden, SubgraphForbidden
from indturan.generators import complete_bipartite, cycle, edge_plus_isolated, path

from oracles import SubsetTable, edge_set

K22 = SubgraphForbidden(complete_bipartite(2, 2))
C4_IND = InducedForbidden(Pattern(cycle(4)))
P4_IND = InducedForbidden(Pattern(path(4)))
TRIVIAL = SubgraphForbidden(edge_plus_isolated())

BATTERY = {
    "K22": ConstraintSet([K22]),
    "C4-ind": ConstraintSet([C4_IND]),
    "K22+P4-ind": ConstraintSet([K22, P4_IND]),
    "trivialH": ConstraintSet([TRIVIAL]),
}

# the pattern graphs H of the battery, for the induced-vs-subgraph comparison
BATTERY_PATTERNS = {
    "C4": cycle(4),
    "P4": path(4),
    "edge+K1": edge_plus_isolated(),
}


def table_for(constraint) -> SubsetTable:
    g = constraint.graph
    mode = {Mode.SUBGRAPH: "subgraph", Mode.INDUCED: "induced", Mode.FORBIDDEN: "forbidden"}[constraint.mode]
    forbidden = constraint.pattern.forbidden if mode == "forbidden" else ()
    return SubsetTable(g.n, edge_set(g.edges()), mode, forbidden)


def no_isolated_vertices(constraints: ConstraintSet) -> bool:
    """Adding an isolated vertex cannot create a copy of a pattern without isolated vertices."""
    return all(min(c.graph.degrees()) > 0 for c in constraints)
