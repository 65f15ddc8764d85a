"""Generators: platonic solids, prisms, Goldberg-Coxeter, family57, discs."""

from __future__ import annotations

import networkx as nx
import pytest

from oddplanar.curvature import curvature
from oddplanar.generators import (
    GCSpec,
    double_cone,
    family57,
    gc_fullerene,
    goldberg_coxeter,
    platonic,
    prism,
)
from oddplanar.planar_map import are_isomorphic, dual, is_3_connected, validate_class
from oddplanar.tjoin import refine
from oracles import to_nx


@pytest.mark.parametrize("name, nx_graph", [
    ("tetrahedron", nx.tetrahedral_graph),
    ("icosahedron", nx.icosahedral_graph),
    ("dodecahedron", nx.dodecahedral_graph),
])
def test_platonic_matches_networkx(name, nx_graph):
    assert nx.vf2pp_is_isomorphic(to_nx(platonic(name)), nx_graph())


def test_platonic_unknown():
    with pytest.raises(ValueError):
        platonic("cube-ish")


@pytest.mark.parametrize("k", [3, 4, 5, 8])
def test_prism(k):
    m = prism(k)
    assert (m.n, len(m.edges)) == (2 * k, 3 * k)
    assert sorted(m.face_sizes()) == sorted([4] * k + [k, k])
    assert nx.vf2pp_is_isomorphic(to_nx(m), nx.circular_ladder_graph(k))


def test_prism_too_small():
    with pytest.raises(ValueError):
        prism(2)


# ---------------------------------------------------------------------------
# Goldberg-Coxeter
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("seed, i, j", [
    ("icosahedron", 1, 0), ("icosahedron", 1, 1), ("icosahedron", 2, 0), ("icosahedron", 2, 1),
    ("icosahedron", 3, 2), ("tetrahedron", 1, 0), ("tetrahedron", 1, 1), ("tetrahedron", 2, 1),
])
def test_gc_area_and_degrees(seed, i, j):
    tri = goldberg_coxeter(seed, i, j)
    spec = GCSpec(seed, i, j)
    assert tri.area == spec.area == len(tri.faces)
    low = 5 if seed == "icosahedron" else 3
    degs = sorted(tri.degrees())
    count = 12 if seed == "icosahedron" else 4
    assert degs[:count] == [low] * count
    assert all(d == 6 for d in degs[count:])
    assert tri.n == spec.area // 2 + 2


def test_gc_identity():
    assert are_isomorphic(goldberg_coxeter("icosahedron", 1, 0), platonic("icosahedron"), reflections=False)


def test_gc_aliases():
    assert GCSpec("icosa", 1, 1) == GCSpec("icosahedron", 1, 1)
    assert goldberg_coxeter("tetra", 1, 1) == goldberg_coxeter("tetrahedron", 1, 1)


@pytest.mark.parametrize("args", [("cube", 1, 0), ("icosa", 0, 1), ("icosa", 1, -1)])
def test_gc_spec_rejects(args):
    with pytest.raises(ValueError):
        GCSpec(*args)


def test_c60_is_the_truncated_icosahedron():
    c60 = gc_fullerene(1, 1)
    assert validate_class(c60).face_vector == (0, 0, 12, 20)
    # isolated pentagons characterise the truncated icosahedron among C60 isomers
    pent = [set(f) for f in c60.faces if len(f) == 5]
    assert all(not (a & b) for x, a in enumerate(pent) for b in pent[x + 1:])
    assert nx.vf2pp_is_isomorphic(to_nx(c60), _truncation(platonic("icosahedron")))


def test_tetrahedral_gc11_dual_is_truncated_tetrahedron():
    m = gc_fullerene(1, 1, "tetrahedron")
    assert nx.vf2pp_is_isomorphic(to_nx(m), nx.truncated_tetrahedron_graph())


def _truncation(m) -> nx.Graph:
    # replace every vertex by a cycle over its darts, ordered by the rotation
    t = nx.Graph()
    for v in range(m.n):
        r = m.neighbors(v)
        for a, b in zip(r, r[1:] + r[:1]):
            t.add_edge((v, a), (v, b))
    for u, v in m.edges:
        t.add_edge((u, v), (v, u))
    return t


def test_refined_icosahedron_is_gc20():
    assert are_isomorphic(refine(goldberg_coxeter("icosahedron", 1, 0)), goldberg_coxeter("icosahedron", 2, 0))


def test_gc21_is_chiral():
    g = goldberg_coxeter("icosahedron", 2, 1)
    assert not are_isomorphic(g, g.mirror(), reflections=False)
    assert are_isomorphic(goldberg_coxeter("icosahedron", 1, 2), g.mirror(), reflections=False)


@pytest.mark.parametrize("i, j", [(1, 1), (2, 1), (2, 2)])
def test_gc_fullerenes_are_in_class(i, j):
    m = gc_fullerene(i, j)
    rep = validate_class(m)
    assert rep.ok
    assert m.n == 20 * (i * i + i * j + j * j)


def test_double_cone():
    tri, apex = double_cone(4, 3)
    assert tri.degree(apex) == 4
    assert curvature(tri, range(tri.n)) == 12
    near = tri.ball([apex], 2) - {apex}
    assert near and all(tri.degree(v) == 6 for v in near)
    with pytest.raises(ValueError):
        double_cone(2, 3)


# ---------------------------------------------------------------------------
# family57
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family57(k):
    fam = family57(k)
    g = fam.graph
    assert all(d == 3 for d in g.degrees())
    assert is_3_connected(g)
    assert set(g.face_sizes()) == {5, 7}
    assert g.n == 20 + 40 * k
    assert len(fam.packing) == 4 + 5 * k > g.n / 8
    used: set[int] = set()
    for f in fam.packing:
        assert g.face_size(f) % 2 == 1
        edges = {g.edge_id(u, v) for u, v in g.face_darts(f)}
        assert not (edges & used)
        used |= edges
    d, _ = dual(g)
    assert sorted(set(d.degrees())) == [5, 7]


def test_family57_rejects_k0():
    with pytest.raises(ValueError):
        family57(0)
