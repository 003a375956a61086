"""Induced extremal graph search: embeddings, exact and heuristic extremal
numbers, projective-plane hosts and randomized embedding procedures."""

from .graph import (
    MAX_VERTICES,
    DegeneracyOrder,
    Decomposition,
    Graph,
    VertexSet,
    common_neighborhood,
    components_and_bipartition,
    degeneracy,
    degeneracy_order,
    girth,
    k_core,
    min_degree_prune,
)
from .graph6 import Graph6Error, decode, encode, read_graphs, write_graphs
from .search import (
    BudgetExhausted,
    Embedding,
    Mode,
    Pattern,
    contains_kss,
    count_embeddings,
    find_embedding,
    flower_search,
    greedy_disjoint_induced,
    iter_embeddings,
    validate_embedding,
)

__version__ = "0.1.0"
