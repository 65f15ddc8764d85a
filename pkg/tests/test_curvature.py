"""Curvature, patches, moats and the D_r(c) discs."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddplanar.curvature import (
    GrowthOverflow,
    NotApplicable,
    Triangulation,
    bfs_patch,
    curvature,
    cut_size,
    gauss_bonnet_check,
    gauss_bonnet_residual,
    is_closed_disc,
    isoperimetric_check,
    make_patch,
    moat,
    moat_identities_check,
    patch_boundary,
)
from oddplanar.generators import disc, five_patch_example, goldberg_coxeter, platonic
from oddplanar.planar_map import dual


def _ico() -> Triangulation:
    return Triangulation.from_map(platonic("icosahedron"))


# ---------------------------------------------------------------------------
# Curvature and Gauss-Bonnet
# ---------------------------------------------------------------------------


def test_total_curvature_is_twelve():
    assert curvature(_ico(), range(12)) == 12


def test_single_vertex_curvature():
    assert curvature(_ico(), [0]) == 1


@pytest.mark.parametrize("seed, i, j", [("icosa", 1, 0), ("icosa", 2, 1), ("icosa", 3, 3), ("tetra", 1, 1),
                                        ("tetra", 3, 1)])
def test_gauss_bonnet_on_sphere(seed, i, j):
    tri = goldberg_coxeter(seed, i, j)
    assert gauss_bonnet_check(tri) == 0
    assert curvature(tri, range(tri.n)) == 12


def test_gauss_bonnet_single_triangle():
    assert gauss_bonnet_residual([(0, 1, 2)]) == 0


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_gauss_bonnet_on_discs(c, r):
    d = disc(c, r)
    if d.host is not None:
        assert gauss_bonnet_check(d.host, d.patch.vertices) == 0


def test_gauss_bonnet_on_random_patches():
    tri = goldberg_coxeter("icosa", 2, 2)
    rng = random.Random(2)
    for _ in range(30):
        xs = bfs_patch(tri, rng.randrange(tri.n), rng.randint(2, 60))
        if make_patch(tri, xs).area:
            assert gauss_bonnet_check(tri, xs) == 0


# ---------------------------------------------------------------------------
# Patches
# ---------------------------------------------------------------------------


def test_five_patch_example():
    tri, xs = five_patch_example()
    p = make_patch(tri, xs)
    assert (p.area, p.boundary_length, p.curvature, p.is_patch) == (3, 3, 5, True)
    assert p.interior == frozenset({0})
    assert patch_boundary(tri, xs) == (3, True)


def test_single_vertex_patch():
    p = make_patch(_ico(), [3])
    assert (p.area, p.boundary_length, p.is_patch) == (0, 0, True)


def test_disconnected_set_is_not_a_patch():
    tri = _ico()
    far = max(range(tri.n), key=lambda v: v not in tri.rotations[0] and v != 0)
    assert not make_patch(tri, [0, far]).is_patch


def test_whole_sphere_is_not_a_patch():
    assert not make_patch(_ico(), range(12)).is_patch


def test_annulus_is_not_a_patch():
    tri = _ico()
    ring = set(tri.rotations[0])
    p = make_patch(tri, ring)
    assert not p.is_patch


def test_empty_set_rejected():
    with pytest.raises(ValueError):
        make_patch(_ico(), [])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_cut_size_matches_boundary(seed):
    # the dual disc has 2|dL| + 6 - c boundary edges
    rng = random.Random(seed)
    tri = goldberg_coxeter(rng.choice(["icosa", "tetra"]), rng.randint(1, 3), rng.randint(0, 2))
    order = list(range(tri.n))
    rng.shuffle(order)
    xs = bfs_patch(tri, rng.randrange(tri.n), rng.randint(1, tri.n // 2), order)
    p = make_patch(tri, xs)
    assert p.is_patch
    assert cut_size(tri, xs) == 2 * p.boundary_length + 6 - p.curvature


# ---------------------------------------------------------------------------
# Isoperimetric inequality
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("c", [1, 3, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_discs_attain_isoperimetric_equality(c, r):
    d = disc(c, r)
    assert d.boundary_length ** 2 == (6 - c) * d.area
    if d.host is not None:
        rep = isoperimetric_check(d.host, d.patch.vertices)
        assert rep.holds and rep.equality and rep.equality_condition


def test_isoperimetric_strict_on_five_patch():
    tri, xs = five_patch_example()
    rep = isoperimetric_check(tri, xs)
    assert rep.holds and not rep.equality


def test_isoperimetric_not_applicable():
    tri = _ico()
    with pytest.raises(NotApplicable):
        isoperimetric_check(tri, [v for v in range(12) if v != 0 and v not in tri.rotations[0]][:6] or [1])


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_isoperimetric_random(seed):
    rng = random.Random(seed)
    tri = goldberg_coxeter("icosa", rng.randint(1, 3), rng.randint(0, 3))
    order = list(range(tri.n))
    rng.shuffle(order)
    xs = bfs_patch(tri, rng.randrange(tri.n), rng.randint(1, tri.n // 2), order)
    p = make_patch(tri, xs)
    if not 0 < p.curvature < 6:
        return
    rep = isoperimetric_check(tri, xs)
    assert p.boundary_length ** 2 >= (6 - p.curvature) * p.area
    assert rep.holds and rep.equality_condition


# ---------------------------------------------------------------------------
# Moats
# ---------------------------------------------------------------------------


def test_five_patch_moat_areas():
    tri, xs = five_patch_example()
    m = moat(tri, xs, 2)
    assert [len(b) for b in m.bands] == [7, 9]
    assert m.area == 16
    assert not (m.faces & make_patch(tri, xs).faces)


def test_zero_width_moat():
    tri, xs = five_patch_example()
    assert moat(tri, xs, 0).area == 0


def test_moat_around_degree_five_vertex():
    tri = dual(goldberg_coxeter("icosa", 1, 1))[0]
    tri = Triangulation.from_map(dual(tri)[0])
    five = next(v for v in range(tri.n) if tri.degree(v) == 5)
    assert moat(tri, [five], 1).area == 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_moat_area_five_k_squared(k):
    tri = goldberg_coxeter("icosa", k, k)
    five = next(v for v in range(tri.n) if tri.degree(v) == 5)
    assert moat(tri, [five], k).area == 5 * k * k


def test_growth_overflow():
    with pytest.raises(GrowthOverflow):
        moat(_ico(), [0], 4)


def test_moat_needs_patch_base():
    tri = _ico()
    with pytest.raises(ValueError):
        moat(tri, set(tri.rotations[0]), 1)


def test_five_patch_identities():
    tri, xs = five_patch_example()
    rep = moat_identities_check(tri, xs, 2)
    assert rep.passed
    assert rep.first_band_area == 2 * 3 + 6 - 5 == 7
    assert rep.moat_area == 2 * 2 * 3 + (6 - 5) * 4 == 16


@pytest.mark.parametrize("c", [1, 2, 3])
def test_disc_moat_identities(c):
    d = disc(c, 2)
    rep = moat_identities_check(d.host, d.patch.vertices, 2)
    assert rep.passed and rep.isoperimetric_bound


def test_precondition_failure_is_reported():
    rep = moat_identities_check(_ico(), [0], 3)
    assert not rep.precondition and rep.area_identity is None and not rep.passed


def test_contractible_complement_with_dangling_edge():
    # Each grown region is an induced contractible 3-patch, yet the complement
    # of L has an edge with both triangles on L's band, so the boundary grows
    # by 1 instead of 6 - c = 3 and the closed-form area is off by 4.
    tri = goldberg_coxeter("tetra", 2, 2)
    xs = {9, 10, 11, 17, 18, 19, 25}
    assert make_patch(tri, xs).is_patch
    m = moat(tri, xs, 2)
    assert [len(b) for b in m.bands] == [19, 21]
    assert all(make_patch(tri, r).is_patch and make_patch(tri, r).curvature == 3 for r in m.regions)
    assert m.area == 40 != 2 * 2 * 8 + 3 * 4
    assert not is_closed_disc(tri, set(range(tri.n)) - xs)
    rep = moat_identities_check(tri, xs, 2)
    assert not rep.precondition and "closed disc" in rep.precondition_failure


def test_closed_disc():
    tri, xs = five_patch_example()
    assert is_closed_disc(tri, xs)
    assert not is_closed_disc(tri, [0])


# ---------------------------------------------------------------------------
# D_r(c)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("r", [0, 1, 2, 3, 4])
def test_disc_counts(c, r):
    d = disc(c, r)
    m = 6 - c
    assert d.dual_boundary_length == m * (2 * r + 1)
    assert d.dual_face_count - 1 == m * r * (r + 1) // 2
    assert d.area == m * r * r
    assert d.boundary_length == m * r
    if d.host is not None:
        p = d.patch
        assert (p.area, p.boundary_length, p.curvature) == (d.area, d.boundary_length, c)
        assert cut_size(d.host, p.vertices) == d.dual_boundary_length
        assert len(p.vertices) == d.dual_face_count


def test_disc_rejects_bad_parameters():
    with pytest.raises(ValueError):
        disc(0, 1)
    with pytest.raises(ValueError):
        disc(3, -1)
