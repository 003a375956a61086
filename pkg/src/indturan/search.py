"""Subgraph containment: plain, induced and forbidden-pair embeddings.

The engine backtracks over pattern vertices in a fixed order and keeps the
candidate set of each step as one bitmask: the allowed host vertices, minus
used ones, intersected with the neighbourhoods of already-placed pattern
neighbours and (induced/forbidden modes) minus the neighbourhoods of
placed vertices that must stay non-adjacent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from .graph import Graph, VertexSet, degeneracy_order, lowest_bits
from .graph6 import decode, encode
from .symmetry import HostSymmetry

MAX_PATTERN_VERTICES = 32


class Mode(str, enum.Enum):
    SUBGRAPH = "subgraph"
    INDUCED = "induced"
    FORBIDDEN = "forbidden"


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search could decide."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Pattern:
    """A pattern graph with optional forbidden non-edges and an optional root."""

    graph: Graph
    forbidden: frozenset[tuple[int, int]] = frozenset()
    root: int | None = None

    def __post_init__(self):
        g = self.graph
        if g.n > MAX_PATTERN_VERTICES:
            raise ValueError(f"patterns are limited to {MAX_PATTERN_VERTICES} vertices")
        pairs = set()
        for u, v in self.forbidden:
            if u == v:
                raise ValueError(f"forbidden pair ({u}, {v}) is a loop")
            if not (0 <= u < g.n and 0 <= v < g.n):
                raise ValueError(f"forbidden pair ({u}, {v}) outside the pattern")
            if g.has_edge(u, v):
                raise ValueError(f"forbidden pair ({u}, {v}) is an edge of the pattern")
            pairs.add(_pair(u, v))
        object.__setattr__(self, "forbidden", frozenset(pairs))
        if self.root is not None and not 0 <= self.root < g.n:
            raise ValueError(f"root {self.root} is not a pattern vertex")

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Read the pattern file format: graph6 line, optional ``u-v`` line, optional ``root=k``."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise ValueError("empty pattern file")
        return cls.from_tokens(lines[0], " ".join(lines[1:]).split())

    @classmethod
    def from_tokens(cls, graph6: str, tokens: Sequence[str]) -> "Pattern":
        g = decode(graph6)
        pairs = []
        root = None
        for tok in tokens:
            if tok.startswith("root="):
                root = int(tok[5:])
            elif "-" in tok:
                a, b = tok.split("-", 1)
                pairs.append((int(a), int(b)))
            else:
                raise ValueError(f"unrecognised pattern token {tok!r}")
        return cls(g, frozenset(pairs), root)

    def tokens(self) -> list[str]:
        out = [f"{u}-{v}" for u, v in sorted(self.forbidden)]
        if self.root is not None:
            out.append(f"root={self.root}")
        return out

    def to_text(self) -> str:
        lines = [encode(self.graph)]
        if self.forbidden:
            lines.append(" ".join(f"{u}-{v}" for u, v in sorted(self.forbidden)))
        if self.root is not None:
            lines.append(f"root={self.root}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, path: str | Path) -> "Pattern":
        return cls.parse(Path(path).read_text())


@dataclass(frozen=True)
class Embedding:
    mapping: tuple[int, ...]  # mapping[pattern vertex] = host vertex
    mode: Mode

    @property
    def image(self) -> VertexSet:
        return VertexSet.of(self.mapping)


def validate_embedding(host: Graph, pattern: Pattern, mapping: Sequence[int], mode: Mode | str) -> list[str]:
    """Re-check an embedding pair by pair; returns the list of violations (empty if valid)."""
    mode = Mode(mode)
    h = pattern.graph
    problems = []
    if len(mapping) != h.n:
        return [f"mapping has {len(mapping)} entries for {h.n} pattern vertices"]
    for v, x in enumerate(mapping):
        if not 0 <= x < host.n:
            problems.append(f"vertex {v} maps outside the host")
    if problems:
        return problems
    if len(set(mapping)) != len(mapping):
        problems.append("mapping is not injective")
    for u in range(h.n):
        for v in range(u + 1, h.n):
            image_adjacent = mapping[u] != mapping[v] and host.has_edge(mapping[u], mapping[v])
            if h.has_edge(u, v):
                if not image_adjacent:
                    problems.append(f"edge {u}-{v} not preserved")
            elif mode is Mode.INDUCED and image_adjacent:
                problems.append(f"non-edge {u}-{v} maps to an edge")
            elif mode is Mode.FORBIDDEN and (u, v) in pattern.forbidden and image_adjacent:
                problems.append(f"forbidden pair {u}-{v} maps to an edge")
    return problems


def search_order(h: Graph, first: Sequence[int] = ()) -> list[int]:
    """Degeneracy embedding order of ``h`` with ``first`` moved to the front.

    Among the remaining vertices the next one is the earliest in degeneracy
    order that has a placed neighbour, so the order stays connected where
    the pattern is.
    """
    order = list(first)
    placed = set(order)
    degen = [v for v in degeneracy_order(h).order if v not in placed]
    placed_mask = 0
    for v in order:
        placed_mask |= 1 << v
    while degen:
        pick = next((v for v in degen if h.rows[v] & placed_mask), degen[0])
        degen.remove(pick)
        order.append(pick)
        placed_mask |= 1 << pick
    return order


class _Budget:
    """Node counter shared by nested searches."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(self.used)


class _Matcher:
    def __init__(self, host: Graph, pattern: Pattern, mode: Mode, allowed: int | None,
                 fixed: Mapping[int, int] | None, symmetry: HostSymmetry | None,
                 budget: int | None | _Budget):
        h = pattern.graph
        self.host = host
        self.k = h.n
        self.spent = budget if isinstance(budget, _Budget) else _Budget(budget)
        fixed = dict(fixed or {})
        for p, x in fixed.items():
            if not 0 <= p < h.n or not 0 <= x < host.n:
                raise ValueError(f"fixed assignment {p}->{x} out of range")
        self.order = search_order(h, sorted(fixed))
        pos = {v: i for i, v in enumerate(self.order)}
        full = (1 << host.n) - 1
        allowed_mask = full if allowed is None else allowed & full
        hdeg = h.degrees()
        by_degree: dict[int, int] = {}
        hostdeg = host.degrees()
        self.base = []
        self.adj_steps = []
        self.sep_steps = []
        self.fixed_at = []
        for i, p in enumerate(self.order):
            d = hdeg[p]
            if d not in by_degree:
                by_degree[d] = sum(1 << x for x in range(host.n) if hostdeg[x] >= d)
            self.base.append(allowed_mask & by_degree[d])
            adj, sep = [], []
            for j in range(i):
                q = self.order[j]
                if h.has_edge(p, q):
                    adj.append(j)
                elif mode is Mode.INDUCED or (mode is Mode.FORBIDDEN and _pair(p, q) in pattern.forbidden):
                    sep.append(j)
            self.adj_steps.append(adj)
            self.sep_steps.append(sep)
            self.fixed_at.append(fixed.get(p))
        self.pos = pos
        self.mode = mode
        use_symmetry = symmetry is not None and allowed is None and not fixed
        self.symmetry = symmetry if use_symmetry else None

    def embeddings(self) -> Iterator[tuple[int, ...]]:
        img = [0] * self.k
        rows = self.host.rows
        order = self.order
        k = self.k
        tick = self.spent.tick

        def extend(i: int, used: int) -> Iterator[None]:
            if i == k:
                yield None
                return
            c = self.base[i] & ~used
            for j in self.adj_steps[i]:
                c &= rows[img[j]]
            for j in self.sep_steps[i]:
                c &= ~rows[img[j]]
            f = self.fixed_at[i]
            if f is not None:
                c &= 1 << f
            elif self.symmetry is not None and c:
                c = self.symmetry.representatives(tuple(img[:i]), c)
            while c:
                low = c & -c
                c ^= low
                tick()
                img[i] = low.bit_length() - 1
                yield from extend(i + 1, used | low)

        for _ in extend(0, 0):
            mapping = [0] * k
            for i, p in enumerate(order):
                mapping[p] = img[i]
            yield tuple(mapping)


def iter_embeddings(host: Graph, pattern: Pattern, mode: Mode | str = Mode.SUBGRAPH, *,
                    allowed: int | None = None, fixed: Mapping[int, int] | None = None,
                    symmetry: HostSymmetry | None = None, budget: int | None = None) -> Iterator[Embedding]:
    """Every embedding in the requested mode (up to host symmetry, if given).

    ``allowed`` restricts the host vertices usable as images, ``fixed`` pins
    pattern vertices to host vertices, ``budget`` caps the number of search
    nodes (exceeding it raises :class:`BudgetExhausted`).
    """
    mode = Mode(mode)
    if pattern.graph.n > host.n:
        return
    m = _Matcher(host, pattern, mode, allowed, fixed, symmetry, budget)
    for mapping in m.embeddings():
        yield Embedding(mapping, mode)


def find_embedding(host: Graph, pattern: Pattern | Graph, mode: Mode | str = Mode.SUBGRAPH, **kwargs) -> Embedding | None:
    """First embedding found, or None after an exhaustive search proved absence."""
    if isinstance(pattern, Graph):
        pattern = Pattern(pattern)
    return next(iter_embeddings(host, pattern, mode, **kwargs), None)


def count_embeddings(host: Graph, pattern: Pattern, mode: Mode | str = Mode.SUBGRAPH,
                     limit: int | None = None, **kwargs) -> int:
    count = 0
    for _ in iter_embeddings(host, pattern, mode, **kwargs):
        count += 1
        if limit is not None and count >= limit:
            break
    return count


def contains_kss(host: Graph, s: int) -> tuple[VertexSet, VertexSet] | None:
    """Find a K_{s,s} subgraph as two disjoint s-sets (A, B), or None if none exists.

    Vertices of degree >= s are ranked by degree, highest first.  A is built
    in increasing rank and every vertex of B must rank after the first vertex
    of A; this removes the side swap and the orderings within each side.
    """
    if s < 1:
        raise ValueError("s must be positive")
    rows = host.rows
    degs = host.degrees()
    ranked = sorted((v for v in range(host.n) if degs[v] >= s), key=lambda v: (-degs[v], v))
    rank = {v: i for i, v in enumerate(ranked)}
    later = [0] * (len(ranked) + 1)
    for i in range(len(ranked) - 1, -1, -1):
        later[i] = later[i + 1] | (1 << ranked[i])

    def grow(a: list[int], start: int, common: int) -> tuple[list[int], int] | None:
        if len(a) == s:
            pool = common & later[rank[a[0]] + 1]
            if pool.bit_count() >= s:
                return a, lowest_bits(pool, s)
            return None
        for i in range(start, len(ranked)):
            v = ranked[i]
            nxt = common & rows[v]
            pool = nxt & later[rank[a[0]] + 1] if a else nxt & later[i + 1]
            if pool.bit_count() < s:
                continue
            found = grow(a + [v], i + 1, nxt)
            if found:
                return found
        return None

    full = (1 << host.n) - 1
    found = grow([], 0, full)
    if found is None:
        return None
    a, b = found
    return VertexSet.of(a), VertexSet(b)


@dataclass
class Packing:
    embeddings: list[Embedding]
    counts: list[int]
    complete: bool
    failed_pattern: int | None
    residual_edges: int


def greedy_disjoint_induced(host: Graph, patterns: Sequence[Pattern], count: int) -> Packing:
    """Greedily collect ``count`` vertex-disjoint induced copies of each pattern, round-robin."""
    free = (1 << host.n) - 1
    found: list[Embedding] = []
    counts = [0] * len(patterns)
    failed = None
    for _ in range(count):
        for idx, pat in enumerate(patterns):
            emb = find_embedding(host, pat, Mode.INDUCED, allowed=free)
            if emb is None:
                failed = idx
                break
            found.append(emb)
            counts[idx] += 1
            free &= ~emb.image
        if failed is not None:
            break
    return Packing(found, counts, failed is None, failed, host.edge_count_within(free))


@dataclass
class Flower:
    status: str  # "found", "absent" or "indeterminate"
    center: int | None = None
    petals: list[Embedding] = field(default_factory=list)
    nodes: int = 0


def flower_search(host: Graph, pattern: Pattern, t: int, budget: int | None = None) -> Flower:
    """Find ``t`` induced copies of the pattern pairwise meeting only at the root's image.

    Each centre is tried in turn and petals are found by backtracking, so a
    search that finishes within budget proves absence; running out of budget
    gives "indeterminate".
    """
    if pattern.root is None:
        raise ValueError("flower search needs a rooted pattern")
    if t < 2:
        raise ValueError("t must be at least 2")
    h = pattern.graph
    root = pattern.root
    if t * (h.n - 1) + 1 > host.n:
        return Flower("absent")
    need = t * h.degree(root)
    spent = _Budget(budget)
    try:
        for u in range(host.n):
            if host.degree(u) < need:
                continue
            petals = _petals(host, pattern, u, t, (1 << host.n) - 1 & ~(1 << u), -1, spent)
            if petals is not None:
                return Flower("found", u, petals, spent.used)
    except BudgetExhausted:
        return Flower("indeterminate", nodes=spent.used)
    return Flower("absent", nodes=spent.used)


def _petals(host: Graph, pattern: Pattern, center: int, t: int, free: int, floor: int,
            spent: _Budget) -> list[Embedding] | None:
    if t == 0:
        return []
    root = pattern.root
    allowed = free | (1 << center)
    seen = set()
    m = _Matcher(host, pattern, Mode.INDUCED, allowed, {root: center}, None, spent)
    for mapping in m.embeddings():
        rest = VertexSet.of(mapping) & ~(1 << center)
        # Petals are unordered: list them by increasing smallest vertex, and
        # only the vertex set of a petal matters for what follows.
        low = (rest & -rest).bit_length() - 1
        if low <= floor or rest in seen:
            continue
        seen.add(rest)
        tail = _petals(host, pattern, center, t - 1, free & ~rest, low, spent)
        if tail is not None:
            return [Embedding(mapping, Mode.INDUCED)] + tail
    return None
