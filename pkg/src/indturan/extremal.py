"""Extremal numbers under subgraph and induced constraints.

``exact_extremal`` enumerates every constraint-free graph on n vertices up
to isomorphism by canonical augmentation: graphs grow one vertex at a time
and a child is kept only when the vertex it was grown by is, up to
isomorphism, the one the canonical labelling puts last.  Both kinds of
constraint are inherited by induced subgraphs, so every level only holds
graphs that already satisfy all constraints and each child only needs
checking for copies through its new vertex.

``lower_bound_search`` is a seeded hill climber for sizes beyond the exact
cap.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .canon import canonical, is_isomorphic
from .generators import complete_bipartite
from .graph import Graph, components_and_bipartition, iter_bits
from .graph6 import decode, encode
from .search import Embedding, Mode, Pattern, contains_kss, find_embedding, validate_embedding

EXACT_CAP = 10
# Depend on the machine or on what earlier calls cached; kept out of certificates.
RUN_LOCAL_STATS = ("wall_time", "new_nodes")


@dataclass(frozen=True)
class SubgraphForbidden:
    graph: Graph

    def __post_init__(self):
        if self.graph.n == 0:
            raise ValueError("constraint graphs must have at least one vertex")

    @property
    def mode(self) -> Mode:
        return Mode.SUBGRAPH

    @property
    def pattern(self) -> Pattern:
        return Pattern(self.graph)

    def describe(self) -> str:
        return f"subgraph {encode(self.graph)}"


@dataclass(frozen=True)
class InducedForbidden:
    """Forbids induced copies of H, or, when F is given, every graph on V(H)
    containing H and avoiding F (copies where the F pairs stay non-adjacent)."""

    pattern: Pattern

    def __post_init__(self):
        if self.pattern.graph.n == 0:
            raise ValueError("constraint graphs must have at least one vertex")

    @property
    def graph(self) -> Graph:
        return self.pattern.graph

    @property
    def mode(self) -> Mode:
        return Mode.FORBIDDEN if self.pattern.forbidden else Mode.INDUCED

    def describe(self) -> str:
        return " ".join(["induced", encode(self.graph)] + self.pattern.tokens())


Constraint = SubgraphForbidden | InducedForbidden


class ManifestError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ConstraintSet:
    items: tuple[Constraint, ...]

    def __init__(self, items: Iterable[Constraint]):
        items = tuple(items)
        if not items:
            raise ValueError("a constraint set needs at least one constraint")
        object.__setattr__(self, "items", items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __add__(self, other: "ConstraintSet | Iterable[Constraint]") -> "ConstraintSet":
        return ConstraintSet(self.items + tuple(other))

    def signature(self) -> tuple[str, ...]:
        return tuple(sorted(c.describe() for c in self.items))

    def to_text(self) -> str:
        return "".join(c.describe() + "\n" for c in self.items)

    @classmethod
    def parse(cls, text: str) -> "ConstraintSet":
        """Read the manifest format: one ``subgraph <g6>`` or
        ``induced <g6> [u-v ...] [root=k]`` per line; ``#`` starts a comment."""
        items = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            kind, *rest = line.split()
            try:
                if kind == "subgraph":
                    if len(rest) != 1:
                        raise ValueError("expected exactly one graph6 string after 'subgraph'")
                    items.append(SubgraphForbidden(decode(rest[0])))
                elif kind == "induced":
                    if not rest:
                        raise ValueError("missing graph6 string after 'induced'")
                    items.append(InducedForbidden(Pattern.from_tokens(rest[0], rest[1:])))
                else:
                    raise ValueError(f"unknown constraint kind {kind!r}")
            except ManifestError:
                raise
            except ValueError as exc:
                raise ManifestError(str(exc), lineno) from exc
        if not items:
            raise ManifestError("no constraints", 0)
        return cls(items)

    @classmethod
    def load(cls, path: str | Path) -> "ConstraintSet":
        return cls.parse(Path(path).read_text())


@lru_cache(maxsize=256)
def _kss_size(g: Graph) -> int | None:
    """s if g is K_{s,s}, else None."""
    if g.n % 2 or g.n == 0:
        return None
    s = g.n // 2
    if g.num_edges != s * s or any(d != s for d in g.degrees()):
        return None
    return s if is_isomorphic(g, complete_bipartite(s, s)) else None


def find_violation(host: Graph, constraint: Constraint) -> Embedding | None:
    """A copy of the constraint graph in the host, in the constraint's mode."""
    if isinstance(constraint, SubgraphForbidden):
        s = _kss_size(constraint.graph)
        if s is not None:
            found = contains_kss(host, s)
            if found is None:
                return None
            return _kss_embedding(constraint.graph, *found)
    return find_embedding(host, constraint.pattern, constraint.mode)


def _kss_embedding(g: Graph, a, b) -> Embedding:
    left, right = components_and_bipartition(g).sides()
    mapping = [0] * g.n
    for p, x in zip(left, a):
        mapping[p] = x
    for p, x in zip(right, b):
        mapping[p] = x
    return Embedding(tuple(mapping), Mode.SUBGRAPH)


def _pin_classes(c: Constraint) -> list[int]:
    """Pattern vertices that cover every copy up to the pattern's symmetry."""
    g = c.graph
    if c.mode is Mode.FORBIDDEN:
        return list(range(g.n))
    seen = set()
    reps = []
    orbit = list(range(g.n))
    for a in canonical(g).automorphisms:
        for v in range(g.n):
            x, y = orbit[v], orbit[a[v]]
            if x != y:
                lo, hi = min(x, y), max(x, y)
                orbit = [lo if o == hi else o for o in orbit]
    for v in range(g.n):
        if orbit[v] not in seen:
            seen.add(orbit[v])
            reps.append(v)
    return reps


class _Checker:
    def __init__(self, constraints: ConstraintSet):
        self.items = [(c, c.pattern, c.mode, _pin_classes(c)) for c in constraints]

    def violated_at(self, g: Graph, v: int, kinds=(Mode.SUBGRAPH, Mode.INDUCED, Mode.FORBIDDEN)) -> bool:
        """Whether some constraint copy uses vertex v (other copies assumed absent)."""
        for c, pat, mode, pins in self.items:
            if mode not in kinds or pat.graph.n > g.n:
                continue
            for p in pins:
                if find_embedding(g, pat, mode, fixed={p: v}) is not None:
                    return True
        return False


_CHECKERS: dict[tuple[str, ...], _Checker] = {}


def _checker(constraints: ConstraintSet) -> _Checker:
    sig = constraints.signature()
    if sig not in _CHECKERS:
        _CHECKERS[sig] = _Checker(constraints)
    return _CHECKERS[sig]


@dataclass
class ExtremalResult:
    n: int
    value: int
    certificate: Graph
    method: str  # "exact" or "lower_bound"
    stats: dict = field(default_factory=dict)
    constraints: ConstraintSet | None = None

    def to_json(self) -> dict:
        stats = {k: v for k, v in self.stats.items() if k not in RUN_LOCAL_STATS}
        return {
            "n": self.n,
            "value": self.value,
            "method": self.method,
            "constraints": [c.describe() for c in self.constraints] if self.constraints else [],
            "certificate": encode(self.certificate),
            "stats": stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "ExtremalResult":
        constraints = ConstraintSet.parse("\n".join(data["constraints"])) if data.get("constraints") else None
        return cls(int(data["n"]), int(data["value"]), decode(data["certificate"]), data["method"],
                   dict(data.get("stats", {})), constraints)

    @classmethod
    def load(cls, path: str | Path) -> "ExtremalResult":
        return cls.from_json(json.loads(Path(path).read_text()))


class ExactCapExceeded(ValueError):
    pass


def _children(parent_rows: tuple[int, ...], k: int, constraints: ConstraintSet) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Accepted canonical children (key, rows) of one canonical parent on k-1 vertices."""
    checker = _checker(constraints)
    new = k - 1
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    subgraph_only = (Mode.SUBGRAPH,)
    other = (Mode.INDUCED, Mode.FORBIDDEN)

    def child_of(s: int) -> Graph:
        rows = [r | ((s >> v & 1) << new) for v, r in enumerate(parent_rows)]
        rows.append(s)
        return Graph._trusted(k, rows)

    def accept(g: Graph) -> None:
        if checker.violated_at(g, new, other):
            return
        c = canonical(g)
        if c.key in out:
            return
        last = c.labeling[-1]
        if last != new:
            if g.degree(last) != g.degree(new):
                return
            rest = [v for v in range(k) if v != last]
            if canonical(g.induced(rest)).key != parent_rows:
                return
        out[c.key] = c.key

    # Subgraph constraints are monotone in the neighbour set, so grow it in
    # increasing order and stop as soon as one is violated.
    def grow(s: int, start: int) -> None:
        g = child_of(s)
        if checker.violated_at(g, new, subgraph_only):
            return
        accept(g)
        for v in range(start, new):
            grow(s | (1 << v), v + 1)

    grow(0, 0)
    return list(out.items())


_LEVEL_CACHE: dict[tuple[str, ...], list[list[tuple[int, ...]]]] = {}


def _levels(n: int, constraints: ConstraintSet, threads: int = 1) -> tuple[list[list[tuple[int, ...]]], int]:
    sig = constraints.signature()
    levels = _LEVEL_CACHE.setdefault(sig, [[()]])
    nodes = 0
    while len(levels) <= n:
        k = len(levels)
        parents = levels[-1]
        found: set[tuple[int, ...]] = set()
        if threads > 1 and len(parents) > 64:
            with ProcessPoolExecutor(threads) as pool:
                for kids in pool.map(_children, parents, [k] * len(parents), [constraints] * len(parents),
                                     chunksize=max(1, len(parents) // (4 * threads))):
                    found.update(key for key, _ in kids)
        else:
            for p in parents:
                found.update(key for key, _ in _children(p, k, constraints))
        nodes += len(found)
        levels.append(sorted(found))
    return levels, nodes


def exact_extremal(n: int, constraints: ConstraintSet, cap: int = EXACT_CAP, threads: int = 1) -> ExtremalResult:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ExactCapExceeded(f"n={n} exceeds the exact-search cap of {cap}; use lower_bound_search instead")
    t0 = time.perf_counter()
    levels, nodes = _levels(n, constraints, threads)
    level = levels[n]
    if not level:
        # Only possible when some constraint fits inside every graph on n
        # vertices, e.g. an edgeless pattern forbidden as a subgraph.
        raise ValueError(f"no graph on {n} vertices satisfies the constraints")
    best = max(level, key=lambda rows: (sum(r.bit_count() for r in rows), rows))
    cert = Graph._trusted(n, best)
    stats = {"nodes": sum(len(lv) for lv in levels[: n + 1]), "classes": len(level),
             "new_nodes": nodes, "wall_time": time.perf_counter() - t0}
    return ExtremalResult(n, cert.num_edges, cert, "exact", stats, constraints)


def restrict_by_min_degree(g: Graph, size: int) -> Graph:
    """Delete minimum-degree vertices (lowest index first) until ``size`` remain."""
    alive = (1 << g.n) - 1
    for _ in range(g.n - size):
        v = min(iter_bits(alive), key=lambda u: ((g.rows[u] & alive).bit_count(), u))
        alive &= ~(1 << v)
    return g.induced(alive)


def _violations(g: Graph, constraints: ConstraintSet) -> list[tuple[Constraint, Embedding]]:
    out = []
    for c in constraints:
        e = find_violation(g, c)
        if e is not None:
            out.append((c, e))
    return out


def lower_bound_search(n: int, constraints: ConstraintSet, budget: int = 2000, seed: int = 0,
                       warm_start: Graph | str | None = None, patience: int | None = None,
                       repair_steps: int | None = None) -> ExtremalResult:
    """Seeded hill climbing: add random non-edges, repair any violation the
    addition causes, and restart from a perturbed best graph on plateaus.

    Subgraph copies are repaired by deleting one of their edges other than
    the one just added; induced copies by adding one of their missing edges
    at the highest-degree vertex of the copy.  If repair fails the addition
    is undone.  The best valid graph seen is the result, so the reported
    value never decreases during a run.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = random.Random(seed)
    t0 = time.perf_counter()
    patience = patience if patience is not None else max(50, n * n // 4)
    repair_steps = repair_steps if repair_steps is not None else 2 * n
    if warm_start is None:
        g = Graph.empty(n)
    else:
        g = decode(warm_start) if isinstance(warm_start, str) else warm_start
        if g.n > n:
            g = restrict_by_min_degree(g, n)
        elif g.n < n:
            g = Graph._trusted(n, list(g.rows) + [0] * (n - g.n))
    g = _repair(g, constraints, rng, None, 10 * n * n) or Graph.empty(n)
    if _violations(g, constraints):
        raise ValueError("could not find any valid starting graph")
    best = g
    stale = 0
    restarts = 0
    for _ in range(budget):
        non = g.non_edges()
        if not non:
            break
        u, v = rng.choice(non)
        cand = _repair(g.with_edges(add=[(u, v)]), constraints, rng, (u, v), repair_steps)
        if cand is not None and cand.num_edges >= g.num_edges:
            g = cand
        if g.num_edges > best.num_edges:
            best, stale = g, 0
        else:
            stale += 1
        if stale >= patience:
            stale = 0
            restarts += 1
            g = best
            edges = g.edges()
            drop = rng.sample(edges, min(len(edges), max(1, len(edges) // 10)))
            g = g.with_edges(remove=drop)
    stats = {"iterations": budget, "restarts": restarts, "seed": seed, "wall_time": time.perf_counter() - t0}
    return ExtremalResult(n, best.num_edges, best, "lower_bound", stats, constraints)


def _repair(g: Graph, constraints: ConstraintSet, rng: random.Random, keep: tuple[int, int] | None,
            steps: int) -> Graph | None:
    for _ in range(steps + 1):
        bad = _violations(g, constraints)
        if not bad:
            return g
        c, emb = bad[0]
        m = emb.mapping
        if c.mode is Mode.SUBGRAPH:
            used = [(m[a], m[b]) for a, b in c.graph.edges()]
            used = [tuple(sorted(e)) for e in used if tuple(sorted(e)) != keep] or used
            g = g.with_edges(remove=[rng.choice(used)])
        else:
            h = c.graph
            pairs = c.pattern.forbidden if c.mode is Mode.FORBIDDEN else h.non_edges()
            missing = [(m[a], m[b]) for a, b in pairs]
            if not missing:
                return None
            top = max(g.degree(x) for e in missing for x in e)
            hubs = [e for e in missing if max(g.degree(e[0]), g.degree(e[1])) == top]
            g = g.with_edges(add=[rng.choice(hubs)])
    return None


@dataclass
class ConstraintCheck:
    constraint: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class Verdict:
    ok: bool
    checks: list[ConstraintCheck]
    notes: list[str]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"constraint": c.constraint, "ok": c.ok,
                        "witness": list(map(list, c.witness)) if c.witness else None,
                        "detail": c.detail} for c in self.checks],
            "notes": self.notes,
        }


def verify_certificate(result: ExtremalResult | Graph, constraints: ConstraintSet | None = None) -> Verdict:
    """Re-check a certificate against each constraint.

    Witnesses are validated pair by pair.  An exactness claim is not
    re-proved; the verdict notes that it rests on the search itself.
    """
    notes = []
    if isinstance(result, Graph):
        g = result
    else:
        g = result.certificate
        constraints = constraints or result.constraints
        if g.n != result.n:
            notes.append(f"certificate has {g.n} vertices, result claims n={result.n}")
        if g.num_edges != result.value:
            notes.append(f"certificate has {g.num_edges} edges, result claims {result.value}")
        if result.method == "exact":
            notes.append("maximality of an exact value is trusted from the search, not re-proved")
    if constraints is None:
        raise ValueError("no constraints to verify against")
    checks = []
    for c in constraints:
        s = _kss_size(c.graph) if isinstance(c, SubgraphForbidden) else None
        if s is not None:
            found = contains_kss(g, s)
            if found is None:
                checks.append(ConstraintCheck(c.describe(), True))
                continue
            a, b = found
            ok_witness = len(a) == len(b) == s and not (a & b) and all(g.has_edge(x, y) for x in a for y in b)
            checks.append(ConstraintCheck(c.describe(), False, (tuple(a), tuple(b)),
                                          "K_{s,s} sides" + ("" if ok_witness else " (witness failed re-check)")))
            continue
        emb = find_embedding(g, c.pattern, c.mode)
        if emb is None:
            checks.append(ConstraintCheck(c.describe(), True))
        else:
            problems = validate_embedding(g, c.pattern, emb.mapping, c.mode)
            checks.append(ConstraintCheck(c.describe(), False, (emb.mapping,),
                                          "copy found" + (f" (witness failed re-check: {problems})" if problems else "")))
    ok = all(ch.ok for ch in checks) and not any("certificate has" in n for n in notes)
    return Verdict(ok, checks, notes)
