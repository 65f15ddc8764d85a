"""Transversals, max-cut, independence bounds, packings and equality flags."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddplanar import formats
from oddplanar.analysis import (
    REPORT_SCHEMA,
    alpha_bounds,
    automorphism_order,
    cut_size_of,
    evaluate_bounds,
    greedy_face_packing,
    max_face_packing,
    maxcut,
    moat_cycle_packing,
    nu_certificate,
    oct,
    verify_cycle_packing,
)
from oddplanar.generators import family57, gc_fullerene, platonic, prism
from oddplanar.planar_map import is_bipartite
from oracles import (
    exhaustive_maxcut,
    exhaustive_oct,
    graph_automorphism_count,
    independence_number,
    odd_face_count_lower_bound,
    random_cubic_map,
)


# ---------------------------------------------------------------------------
# Transversal and max-cut
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m, tau", [
    (platonic("tetrahedron"), 2),
    (platonic("dodecahedron"), 6),
    (prism(6), 0),
    (prism(5), 2),
    (gc_fullerene(1, 1), 12),
    (gc_fullerene(1, 1, "tetrahedron"), 4),
], ids=repr)
def test_oct_values(m, tau):
    r = oct(m)
    assert r.tau == tau == len(r.edges)
    assert is_bipartite(m, removed=r.edges).is_bipartite
    assert r.tau >= odd_face_count_lower_bound(m)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(0, 3))
def test_oct_and_maxcut_against_exhaustive(seed, steps):
    rng = random.Random(seed)
    m = random_cubic_map(rng, steps, rng.choice([platonic("tetrahedron"), prism(3)]))
    assert len(m.edges) <= 18
    r = oct(m)
    assert r.tau == exhaustive_oct(m.edges, m.n)
    mc = maxcut(m, r)
    assert mc.size == mc.recount == exhaustive_maxcut(m.edges, m.n) == len(m.edges) - r.tau


def test_c60_maxcut():
    m = gc_fullerene(1, 1)
    mc = maxcut(m)
    assert mc.size == 78 == cut_size_of(m, mc.side)


# ---------------------------------------------------------------------------
# Independence bounds
# ---------------------------------------------------------------------------


def _independent(m, vs) -> bool:
    return not any(m.has_edge(u, v) for u in vs for v in vs if u < v)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(0, 8))
def test_alpha_lower_bound_and_exact(seed, steps):
    rng = random.Random(seed)
    m = random_cubic_map(rng, steps, prism(rng.randint(3, 6)))
    a = alpha_bounds(m, exact=True)
    assert _independent(m, a.witness) and len(a.witness) >= a.lower
    assert a.lower == Fraction(m.n - oct(m).tau, 2)
    assert a.exact == independence_number(m) >= a.lower
    assert _independent(m, a.exact_set) and len(a.exact_set) == a.exact


def test_dodecahedron_alpha():
    a = alpha_bounds(platonic("dodecahedron"), exact=True)
    assert (a.lower, a.exact) == (7, 8)


def test_alpha_without_exact():
    a = alpha_bounds(gc_fullerene(2, 1))
    assert a.exact is None and a.lower == 61


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m", [platonic("dodecahedron"), gc_fullerene(1, 1, "tetrahedron"), prism(6)], ids=repr)
def test_automorphisms_against_graph_matcher(m):
    assert automorphism_order(m) == graph_automorphism_count(m)


def test_c60_automorphisms():
    assert automorphism_order(gc_fullerene(1, 1)) == 120


def test_chiral_fullerene_automorphisms():
    assert automorphism_order(gc_fullerene(2, 1)) == 60


# ---------------------------------------------------------------------------
# Odd cycle packings
# ---------------------------------------------------------------------------


def test_cycle_packing_verifier():
    m = platonic("dodecahedron")
    f0 = m.faces[0]
    assert verify_cycle_packing(m, [f0])
    assert not verify_cycle_packing(m, [f0, f0])
    assert not verify_cycle_packing(m, [f0[:4]])
    assert not verify_cycle_packing(m, [(f0[0], f0[2], f0[4])])


def test_dodecahedron_packing():
    m = platonic("dodecahedron")
    # adjacent pentagons share an edge, so face packings are independent sets of the icosahedron
    assert len(greedy_face_packing(m)) <= len(max_face_packing(m)) == 3
    assert nu_certificate(m).size == 3 <= oct(m).tau == odd_face_count_lower_bound(m) == 6


@pytest.mark.parametrize("k, nu", [(1, 12), (2, 24), (3, 36)])
def test_moat_packing_reaches_tau(k, nu):
    m = gc_fullerene(k, k)
    cycles = moat_cycle_packing(m)
    assert cycles is not None and verify_cycle_packing(m, cycles)
    cert = nu_certificate(m)
    assert cert.size == nu == oct(m).tau


def test_moat_packing_not_extremal():
    assert moat_cycle_packing(gc_fullerene(2, 1)) is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family57_packing(k):
    fam = family57(k)
    cert = nu_certificate(fam.graph)
    assert cert.size >= 4 + 5 * k > fam.graph.n / 8


# ---------------------------------------------------------------------------
# Reports and equality
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_icosahedral_equality(k):
    rep = evaluate_bounds(gc_fullerene(k, k))
    assert rep.equality and rep.icosahedral.holds and rep.icosahedral.k == k
    assert 5 * rep.tau ** 2 == 12 * rep.n
    assert rep.bound_holds


@pytest.mark.parametrize("k", [1, 2])
def test_tetrahedral_equality(k):
    rep = evaluate_bounds(gc_fullerene(k, k, "tetrahedron"))
    assert rep.equality and rep.tetrahedral.holds and rep.tetrahedral.k == k
    assert 3 * rep.tau ** 2 == 4 * rep.n
    assert rep.bound_no_pentagon_sq == Fraction(4 * rep.n, 3)


@pytest.mark.parametrize("m", [gc_fullerene(2, 1), gc_fullerene(2, 0), gc_fullerene(2, 1, "tetrahedron"),
                               platonic("dodecahedron"), prism(6)], ids=repr)
def test_no_equality(m):
    rep = evaluate_bounds(m)
    assert rep.bound_holds and not rep.equality


def test_gc21_is_strict():
    rep = evaluate_bounds(gc_fullerene(2, 1))
    assert rep.tau == 18 and 5 * 18 ** 2 < 12 * 140
    assert rep.icosahedral.face_condition and not rep.icosahedral.bound_attained


def test_outside_class():
    rep = evaluate_bounds(family57(1).graph)
    assert not rep.class_ok and rep.bound_holds is None and not rep.equality
    assert rep.text_fields()["class"].startswith("not-applicable")
    assert rep.aut_order is None


def test_text_fields_are_exact():
    rep = evaluate_bounds(gc_fullerene(1, 1))
    f = rep.text_fields()
    assert f["bound_general_sq"] == "720/5" and f["bound_general"] == "12.000000"
    assert f["equality_icosahedral_flags"] == "5tau^2=12n:true faces(0,0,12,h):true n=60k^2:true aut=120:true"
    assert rep.to_text(["n", "tau_odd"]) == "n=60\ntau_odd=12\n"


@pytest.mark.parametrize("m", [gc_fullerene(1, 1), family57(1).graph, prism(5)], ids=repr)
def test_report_schema(m):
    d = evaluate_bounds(m).to_dict()
    jsonschema.validate(d, REPORT_SCHEMA)
    json.dumps(d)


@pytest.mark.parametrize("name", ["c60", "dodecahedron", "truncated_tetrahedron", "gc22"])
def test_golden_reports(golden, name):
    m = formats.read_maps(golden / f"{name}.pc")[0]
    records = json.loads((golden / f"{name}.report.json").read_text())
    exact = records[0]["alpha_exact"] is not None
    d = evaluate_bounds(m, exact_alpha=exact).to_dict()
    for rec in records:
        jsonschema.validate(rec, REPORT_SCHEMA)
    assert {k: v for k, v in records[0].items() if k != "graph"} == d
