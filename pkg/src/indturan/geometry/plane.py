"""The projective plane PG(2,q), its incidence graph and its collineations."""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..graph import Graph
from ..graph6 import encode
from ..symmetry import HostSymmetry
from .field import GF, gf

Triple = tuple[int, int, int]


def _normalize(f: GF, x: Triple) -> Triple:
    lead = next(c for c in x if c)
    s = f.inv(lead)
    return tuple(f.mul(s, c) for c in x)


class PlaneAxiomError(AssertionError):
    pass


@dataclass
class IncidenceStructure:
    """Points and lines of PG(2,q) as normalized homogeneous triples.

    Point and line lists coincide (a line [a:b:c] is the set of points with
    a*x + b*y + c*z = 0).  In :attr:`graph` points are vertices 0..N-1 and
    line i is vertex N+i.
    """

    q: int
    field: GF
    points: list[Triple]
    lines: list[Triple]
    line_points: list[tuple[int, ...]]
    point_lines: list[tuple[int, ...]]
    graph: Graph = field(repr=False)
    _index: dict[Triple, int] = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.points)

    def dot(self, x: Triple, y: Triple) -> int:
        f = self.field
        s = 0
        for a, b in zip(x, y):
            s = f.add(s, f.mul(a, b))
        return s

    def incident(self, point: int, line: int) -> bool:
        return self.dot(self.points[point], self.lines[line]) == 0

    def cross(self, x: Triple, y: Triple) -> Triple:
        f = self.field
        return (
            f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1])),
            f.sub(f.mul(x[2], y[0]), f.mul(x[0], y[2])),
            f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0])),
        )

    def index(self, x: Triple) -> int:
        return self._index[_normalize(self.field, x)]

    def join(self, p1: int, p2: int) -> int:
        """The line through two distinct points."""
        if p1 == p2:
            raise ValueError("join needs distinct points")
        return self.index(self.cross(self.points[p1], self.points[p2]))

    def meet(self, l1: int, l2: int) -> int:
        """The point on two distinct lines."""
        if l1 == l2:
            raise ValueError("meet needs distinct lines")
        return self.index(self.cross(self.lines[l1], self.lines[l2]))

    def collinear(self, a: int, b: int, c: int) -> bool:
        return self.dot(self.cross(self.points[a], self.points[b]), self.points[c]) == 0

    def verify(self) -> None:
        """Check the counting and plane axioms; raises PlaneAxiomError."""
        q, n = self.q, self.size
        if n != q * q + q + 1 or len(self.lines) != n:
            raise PlaneAxiomError(f"expected {q * q + q + 1} points and lines, got {n}/{len(self.lines)}")
        if any(len(ps) != q + 1 for ps in self.line_points):
            raise PlaneAxiomError("a line does not carry q+1 points")
        if any(len(ls) != q + 1 for ls in self.point_lines):
            raise PlaneAxiomError("a point is not on q+1 lines")
        on = [set(ls) for ls in self.point_lines]
        for a, b in itertools.combinations(range(n), 2):
            if len(on[a] & on[b]) != 1:
                raise PlaneAxiomError(f"points {a} and {b} share {len(on[a] & on[b])} lines")
        carry = [set(ps) for ps in self.line_points]
        for a, b in itertools.combinations(range(n), 2):
            if len(carry[a] & carry[b]) != 1:
                raise PlaneAxiomError(f"lines {a} and {b} share {len(carry[a] & carry[b])} points")

    # Collineations, as permutations of incidence-graph vertices.

    def _matrix_perm(self, m, m_inv_t) -> list[int]:
        f = self.field

        def apply(mat, x):
            out = []
            for row in mat:
                s = 0
                for a, b in zip(row, x):
                    s = f.add(s, f.mul(a, b))
                out.append(s)
            return tuple(out)

        n = self.size
        perm = [self.index(apply(m, x)) for x in self.points]
        perm += [n + self.index(apply(m_inv_t, x)) for x in self.lines]
        return perm

    def automorphism_generators(self) -> list[list[int]]:
        """Generators of the full automorphism group of the incidence graph.

        Elementary transvections with entries over an additive basis and one
        primitive diagonal matrix generate GL(3,q); Frobenius adds the field
        automorphisms and the standard polarity swaps points with lines.
        """
        f, n = self.field, self.size
        ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        gens = []
        basis = [f.p ** k for k in range(f.degree)]
        for i, j in itertools.permutations(range(3), 2):
            for a in basis:
                m = [row[:] for row in ident]
                m[i][j] = a
                # (I + aE_ij)^{-T} = I - aE_ji
                mt = [row[:] for row in ident]
                mt[j][i] = f.neg(a)
                gens.append(self._matrix_perm(m, mt))
        g = f.primitive
        if g != 1:
            d = [row[:] for row in ident]
            d[0][0] = g
            dt = [row[:] for row in ident]
            dt[0][0] = f.inv(g)
            gens.append(self._matrix_perm(d, dt))
        if f.degree > 1:
            frob = [self.index(tuple(f.frobenius(c) for c in x)) for x in self.points]
            gens.append(frob + [n + v for v in frob])
        gens.append([n + v for v in range(n)] + list(range(n)))
        return gens

    def symmetry(self, max_depth: int = 6) -> HostSymmetry:
        return _symmetry(self.q, max_depth)

    def sidecar(self) -> dict:
        f = self.field
        n = self.size
        verts = [{"index": i, "kind": "point", "coords": list(x)} for i, x in enumerate(self.points)]
        verts += [{"index": n + i, "kind": "line", "coords": list(x)} for i, x in enumerate(self.lines)]
        return {
            "q": self.q,
            "p": f.p,
            "degree": f.degree,
            "modulus": list(f.modulus),
            "element_encoding": "sum(c_i * p**i) over polynomial coefficients c_i",
            "graph6": encode(self.graph) if self.graph.n <= 62 else None,
            "vertices": verts,
        }

    def export(self, stem: str | Path) -> tuple[Path, Path]:
        """Write ``stem.g6`` and ``stem.json``."""
        stem = Path(stem)
        g6 = stem.with_suffix(".g6")
        side = stem.with_suffix(".json")
        g6.write_text(encode(self.graph) + "\n")
        side.write_text(json.dumps(self.sidecar(), indent=1) + "\n")
        return g6, side


@functools.lru_cache(maxsize=None)
def pg2(q: int) -> IncidenceStructure:
    f = gf(q)
    pts = sorted({_normalize(f, x) for x in itertools.product(range(q), repeat=3) if any(x)},
                 key=lambda x: (x[0], x[1], x[2]))
    index = {x: i for i, x in enumerate(pts)}
    n = len(pts)
    plane = IncidenceStructure(q, f, pts, list(pts), [], [], Graph.empty(0), index)
    line_points = [tuple(i for i, x in enumerate(pts) if plane.dot(x, ell) == 0) for ell in pts]
    point_lines: list[list[int]] = [[] for _ in range(n)]
    for li, ps in enumerate(line_points):
        for pi in ps:
            point_lines[pi].append(li)
    plane.line_points = line_points
    plane.point_lines = [tuple(ls) for ls in point_lines]
    plane.graph = Graph.from_edges(2 * n, [(pi, n + li) for li, ps in enumerate(line_points) for pi in ps])
    plane.verify()
    return plane


@functools.lru_cache(maxsize=None)
def _symmetry(q: int, max_depth: int) -> HostSymmetry:
    plane = pg2(q)
    return HostSymmetry(plane.graph, plane.automorphism_generators(), max_depth=max_depth)


@dataclass
class QuadrangleReport:
    q: int
    exhaustive: bool
    quadrangles: list[tuple[tuple[int, int, int, int], bool]]

    @property
    def checked(self) -> int:
        return len(self.quadrangles)

    @property
    def colinear(self) -> int:
        return sum(c for _, c in self.quadrangles)

    @property
    def verdict(self) -> str:
        if self.colinear == self.checked:
            return "colinear-always"
        if self.colinear == 0:
            return "never-colinear"
        return "mixed"

    @property
    def expected(self) -> str:
        return "colinear-always" if gf(self.q).p == 2 else "never-colinear"


def diagonal_points(plane: IncidenceStructure, quad: tuple[int, int, int, int]) -> tuple[int, int, int]:
    a, b, c, d = quad
    pairs = (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c)))
    return tuple(plane.meet(plane.join(*s), plane.join(*t)) for s, t in pairs)


def quadrangle_diagonal_test(q: int, trials: int = 500, seed: int = 0,
                             exhaustive_limit: int = 4) -> QuadrangleReport:
    """Check whether the diagonal points of complete quadrangles are collinear.

    Every 4-set in general position is examined for q <= exhaustive_limit;
    otherwise ``trials`` quadrangles are drawn with a seeded RNG.
    """
    plane = pg2(q)
    n = plane.size
    out = []

    def general(quad) -> bool:
        return not any(plane.collinear(*t) for t in itertools.combinations(quad, 3))

    def record(quad):
        d = diagonal_points(plane, quad)
        out.append((quad, plane.collinear(*d)))

    if q <= exhaustive_limit:
        for quad in itertools.combinations(range(n), 4):
            if general(quad):
                record(quad)
        return QuadrangleReport(q, True, out)
    rng = random.Random(seed)
    while len(out) < trials:
        quad = tuple(sorted(rng.sample(range(n), 4)))
        if general(quad):
            record(quad)
    return QuadrangleReport(q, False, out)
