import itertools
import json

import networkx as nx
import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from indturan import Graph, Mode, Pattern, contains_kss, decode, find_embedding, girth
from indturan.canon import is_isomorphic
from indturan.geometry import (
    CATALOG_NAMES,
    NotPrimePowerError,
    PlaneAxiomError,
    diagonal_points,
    gf,
    induced_absence_report,
    least_irreducible,
    pattern_library,
    pg2,
    prime_power,
    quadrangle_diagonal_test,
    single_edge_deletions_isomorphic,
)

from oracles import projective_points

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16]


def nx_graph(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


# fields

@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms(q):
    f = gf(q)
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_matches_polynomial_arithmetic(q):
    f = gf(q)
    p, a = prime_power(q)
    modulus = list(reversed(f.modulus))  # highest degree first
    assert gf_irreducible_p(modulus, p, ZZ)

    def poly(x):
        return [x // p ** i % p for i in range(a)][::-1]

    for x, y in itertools.product(range(q), repeat=2):
        prod = gf_rem(gf_mul(poly(x), poly(y), p, ZZ), modulus, p, ZZ)
        value = sum(int(c) * p ** i for i, c in enumerate(reversed(prod)))
        assert f.mul(x, y) == value


def test_least_irreducible_is_least():
    for p, a in ((2, 2), (2, 3), (3, 2), (2, 4), (5, 2)):
        mod = least_irreducible(p, a)
        code = sum(c * p ** i for i, c in enumerate(mod[:a]))
        for smaller in range(code):
            low = [smaller // p ** i % p for i in range(a)]
            assert not gf_irreducible_p([1] + low[::-1], p, ZZ)


def test_field_examples():
    assert gf(2).add(1, 1) == 0
    f4 = gf(4)
    x = f4((0, 1))
    assert x * x == x + 1
    assert f4.modulus_text() == "x^2 + x + 1"
    assert gf(8).modulus_text() == "x^3 + x + 1"
    assert gf(9).modulus_text() == "x^2 + 1"
    with pytest.raises(ZeroDivisionError):
        f4.inv(0)


@pytest.mark.parametrize("q, message", [(6, "6 = 2·3 is not a prime power"), (12, "12 = 2²·3"), (1, "1")])
def test_not_prime_power(q, message):
    with pytest.raises(NotPrimePowerError, match=message):
        gf(q)


# planes

@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_plane_battery(q):
    plane = pg2(q)
    plane.verify()
    n = q * q + q + 1
    g = plane.graph
    assert plane.size == n and g.n == 2 * n
    assert set(g.degrees()) == {q + 1}
    assert g.num_edges == (q + 1) * n
    assert all(len(ps) == q + 1 for ps in plane.line_points)
    assert girth(g) == 6
    assert contains_kss(g, 2) is None


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_planes_match_direct_construction(p):
    plane = pg2(p)
    pts = projective_points(p)
    assert list(plane.points) == pts
    n = len(pts)
    for i, x in enumerate(pts):
        for j, ell in enumerate(pts):
            on = sum(a * b for a, b in zip(x, ell)) % p == 0
            assert plane.graph.has_edge(i, n + j) == on


def test_fano_is_heawood():
    g = pg2(2).graph
    heawood = from_nx(nx.heawood_graph())
    assert find_embedding(g, Pattern(heawood), Mode.INDUCED) is not None
    assert find_embedding(heawood, Pattern(g), Mode.INDUCED) is not None
    assert pg2(3).size == 13 and all(len(ps) == 4 for ps in pg2(3).line_points)


def test_plane_join_meet():
    plane = pg2(4)
    for a, b in itertools.combinations(range(plane.size), 2):
        line = plane.join(a, b)
        assert a in plane.line_points[line] and b in plane.line_points[line]
    for l1, l2 in itertools.combinations(range(plane.size), 2):
        pt = plane.meet(l1, l2)
        assert pt in plane.line_points[l1] and pt in plane.line_points[l2]


def test_verify_rejects_broken_plane():
    import copy
    plane = copy.copy(pg2(2))
    plane.line_points = [plane.line_points[0]] * plane.size
    with pytest.raises(PlaneAxiomError):
        plane.verify()


def _pgl_order(q):
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_automorphism_generators(q):
    plane = pg2(q)
    for gen in plane.automorphism_generators():
        assert plane.graph.relabel(gen) == plane.graph
    _, degree = prime_power(q)
    # collineations and correlations: |PGL(3,q)| * field automorphisms * duality
    assert plane.symmetry().order() == _pgl_order(q) * degree * 2


def test_sidecar_export(tmp_path):
    plane = pg2(3)
    g6, side = plane.export(tmp_path / "pg2_3")
    assert decode(g6.read_text().strip()) == plane.graph
    data = json.loads(side.read_text())
    assert data["q"] == 3 and len(data["vertices"]) == 26
    assert data["vertices"][0]["kind"] == "point" and data["vertices"][13]["kind"] == "line"
    assert data["graph6"] == g6.read_text().strip()


# quadrangles

def _quadrangle_count(q):
    return (q * q + q + 1) * (q * q + q) * q * q * (q - 1) ** 2 // 24


@pytest.mark.parametrize("q, verdict", [(2, "colinear-always"), (3, "never-colinear"), (4, "colinear-always")])
def test_quadrangle_exhaustive(q, verdict):
    report = quadrangle_diagonal_test(q)
    assert report.exhaustive and report.checked == _quadrangle_count(q)
    assert report.verdict == verdict == report.expected


@pytest.mark.parametrize("q, verdict", [(5, "never-colinear"), (7, "never-colinear"), (8, "colinear-always")])
def test_quadrangle_sampled(q, verdict):
    report = quadrangle_diagonal_test(q, trials=500, seed=1)
    assert not report.exhaustive and report.checked >= 500
    assert report.verdict == verdict


def test_diagonal_points_are_intersections():
    plane = pg2(3)
    quad = (0, 1, 5, 12)
    for a, b, c in itertools.combinations(quad, 3):
        assert not plane.collinear(a, b, c)
    d = diagonal_points(plane, quad)
    assert len(set(d)) == 3
    assert plane.meet(plane.join(0, 1), plane.join(5, 12)) in d


# pattern library

def test_library_sizes():
    hm = pattern_library("heawood_minus")
    assert (hm.graph.n, hm.graph.num_edges, hm.girth, hm.degeneracy) == (14, 20, 6, 2)
    assert set(pattern_library("heawood").graph.degrees()) == {3}
    assert pattern_library("pappus").graph.num_edges == 27
    pm = pattern_library("pappus_minus").graph
    assert (pm.n, pm.num_edges) == (18, 26)
    dm = pattern_library("desargues_minus").graph
    assert (dm.n, dm.num_edges) == (20, 29)
    assert pattern_library("fano").graph == pattern_library("heawood").graph
    assert pattern_library("cycle(8)").graph.num_edges == 8
    assert pattern_library("c6").graph.n == 6


def test_library_matches_networkx_constructions():
    assert nx.is_isomorphic(nx_graph(pattern_library("pappus").graph), nx.pappus_graph())
    assert nx.is_isomorphic(nx_graph(pattern_library("desargues").graph), nx.desargues_graph())
    assert nx.is_isomorphic(nx_graph(pattern_library("heawood").graph), nx.heawood_graph())


def test_edge_deletion_choice_is_irrelevant():
    for name in ("heawood", "pappus", "desargues"):
        assert single_edge_deletions_isomorphic(pattern_library(name).graph)
    h = pattern_library("heawood").graph
    for u, v in h.edges():
        assert is_isomorphic(h.with_edges(remove=[(u, v)]), pattern_library("heawood_minus").graph)


def test_unknown_pattern_lists_catalog():
    with pytest.raises(ValueError) as info:
        pattern_library("petersen")
    for name in CATALOG_NAMES:
        assert name in str(info.value)


def test_absence_small_planes():
    rows = induced_absence_report([2, 4], ["heawood_minus"])
    assert all(r.subgraph_present and not r.induced_present for r in rows)
    rows = induced_absence_report([2, 3], ["pappus_minus", "desargues_minus"])
    assert not any(r.induced_present for r in rows)


def test_symmetry_does_not_change_odd_plane_results():
    names = ["heawood_minus", "c8"]
    with_sym = induced_absence_report([3], names, use_symmetry=True)
    plain = induced_absence_report([3], names, use_symmetry=False)
    assert [(r.subgraph_present, r.induced_present) for r in with_sym] == \
        [(r.subgraph_present, r.induced_present) for r in plain]
