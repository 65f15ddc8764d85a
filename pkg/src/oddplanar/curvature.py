"""Combinatorial curvature on triangulations of the sphere.

Curvature of a vertex set ``X`` is ``sum(6 - deg(u) for u in X)``. A patch is
a vertex set whose induced subcomplex is a disc; a moat of width ``w`` is the
band of faces grown ``w`` times around a patch. All identities here are
integer identities and are checked exactly, square roots in squared form.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .planar_map import CombinatorialMap, MapError


class GrowthOverflow(ValueError):
    """Moat growth reached a region whose complement is no longer a disc."""


class NotApplicable(ValueError):
    """The inequality being checked does not apply to this patch."""


class Triangulation(CombinatorialMap):
    """A sphere map whose faces are all triangles."""

    __slots__ = ("face_sets", "vertex_faces")

    def __init__(self, rotations: Sequence[Sequence[int]]):
        super().__init__(rotations)
        bad = [f for f, cyc in enumerate(self.faces) if len(cyc) != 3]
        if bad:
            raise MapError(f"face {bad[0]} has size {len(self.faces[bad[0]])}, not 3")
        self.face_sets = tuple(frozenset(c) for c in self.faces)
        vf: list[list[int]] = [[] for _ in range(self.n)]
        for f, cyc in enumerate(self.faces):
            for v in cyc:
                vf[v].append(f)
        self.vertex_faces = tuple(tuple(x) for x in vf)

    @classmethod
    def from_map(cls, m: CombinatorialMap) -> "Triangulation":
        return cls(m.rotations)

    @property
    def area(self) -> int:
        return len(self.faces)

    def ball(self, center: Iterable[int], radius: int) -> set[int]:
        """Vertices within graph distance ``radius`` of ``center``."""
        seen = set(center)
        frontier = list(seen)
        for _ in range(radius):
            nxt = []
            for v in frontier:
                for u in self.rotations[v]:
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return seen


def curvature(tri: CombinatorialMap, vertices: Iterable[int]) -> int:
    return sum(6 - len(tri.rotations[u]) for u in vertices)


# ---------------------------------------------------------------------------
# Gauss-Bonnet on triangulated surfaces given by their triangles
# ---------------------------------------------------------------------------


def gauss_bonnet_residual(triangles: Iterable[Sequence[int]]) -> int:
    """``sum_int (6-d) + sum_bd (4-d) - 6*chi`` for a pure triangle complex.

    Degrees are taken inside the complex; boundary edges are those lying in
    exactly one triangle. Zero on every triangulated surface.
    """
    tris = [tuple(t) for t in triangles]
    edge_count: Counter[tuple[int, int]] = Counter()
    for a, b, c in tris:
        for x, y in ((a, b), (b, c), (c, a)):
            edge_count[(x, y) if x < y else (y, x)] += 1
    deg: Counter[int] = Counter()
    boundary: set[int] = set()
    for (x, y), k in edge_count.items():
        deg[x] += 1
        deg[y] += 1
        if k == 1:
            boundary.update((x, y))
    chi = len(deg) - len(edge_count) + len(tris)
    total = sum((4 if v in boundary else 6) - d for v, d in deg.items())
    return total - 6 * chi


def gauss_bonnet_check(tri: Triangulation, vertices: Iterable[int] | None = None) -> int:
    """Residual on the whole sphere, or on the subcomplex induced by ``vertices``."""
    if vertices is None:
        return gauss_bonnet_residual(tri.faces)
    xs = set(vertices)
    return gauss_bonnet_residual([tri.faces[f] for f in _induced_faces(tri, xs)])


# ---------------------------------------------------------------------------
# Patches
# ---------------------------------------------------------------------------


def _induced_faces(tri: Triangulation, xs: set[int]) -> set[int]:
    out = set()
    for v in xs:
        for f in tri.vertex_faces[v]:
            if tri.face_sets[f] <= xs:
                out.add(f)
    return out


def _induced_connected(tri: CombinatorialMap, xs: set[int]) -> bool:
    if not xs:
        return False
    start = next(iter(xs))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in tri.rotations[v]:
            if u in xs and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(xs)


@dataclass(frozen=True)
class Patch:
    """Vertex set of a triangulation with its induced-subcomplex measures.

    ``boundary_length`` is the length of the boundary walk: an edge of the
    subcomplex in one triangle counts once, an edge in none counts twice
    (both sides). On two-dimensional discs this is the number of edges lying
    in at most one triangle; it also keeps the moat identities exact for
    degenerate patches such as single vertices and paths.
    """

    tri: Triangulation = field(repr=False, compare=False)
    vertices: frozenset[int]
    faces: frozenset[int]
    area: int
    boundary_length: int
    curvature: int
    is_patch: bool
    interior: frozenset[int]

    @property
    def boundary_vertices(self) -> frozenset[int]:
        return self.vertices - self.interior


def make_patch(tri: Triangulation, vertices: Iterable[int]) -> Patch:
    xs = set(vertices)
    if not xs:
        raise ValueError("patch needs at least one vertex")
    unknown = [v for v in xs if not 0 <= v < tri.n]
    if unknown:
        raise ValueError(f"unknown vertex {unknown[0]}")
    faces = _induced_faces(tri, xs)
    in_tri: Counter[int] = Counter()
    for f in faces:
        cyc = tri.faces[f]
        for i in range(3):
            in_tri[tri.edge_id(cyc[i], cyc[(i + 1) % 3])] += 1
    n_edges = 0
    boundary = 0
    bverts: set[int] = set()
    for v in xs:
        for u in tri.rotations[v]:
            if u in xs and v < u:
                n_edges += 1
                k = in_tri[tri.edge_id(v, u)]
                if k < 2:
                    boundary += 2 - k
                    bverts.update((u, v))
    rest = set(range(tri.n)) - xs
    chi = len(xs) - n_edges + len(faces)
    ok = bool(rest) and chi == 1 and _induced_connected(tri, xs) and _induced_connected(tri, rest)
    return Patch(
        tri=tri,
        vertices=frozenset(xs),
        faces=frozenset(faces),
        area=len(faces),
        boundary_length=boundary,
        curvature=curvature(tri, xs),
        is_patch=ok,
        interior=frozenset(xs - bverts),
    )


def is_closed_disc(tri: Triangulation, vertices: Iterable[int]) -> bool:
    """True if the induced subcomplex is a triangulated closed disc.

    Stronger than :func:`make_patch`'s test: every induced edge must lie on
    an induced triangle and the induced triangles at each vertex must form a
    single fan, so the boundary is one simple cycle.
    """
    xs = set(vertices)
    p = make_patch(tri, xs)
    if not p.is_patch or p.area == 0:
        return False
    covered = {tri.edge_id(a, b) for f in p.faces for a, b in itertools.combinations(tri.faces[f], 2)}
    for v in xs:
        if any(u in xs and tri.edge_id(v, u) not in covered for u in tri.rotations[v]):
            return False
        inside = [tri.face_of_dart(v, u) in p.faces for u in tri.rotations[v]]
        runs = sum(1 for i in range(len(inside)) if inside[i] and not inside[i - 1])
        if runs > 1 or not any(inside):
            return False
    return True


def patch_boundary(tri: Triangulation, vertices: Iterable[int]) -> tuple[int, bool]:
    p = make_patch(tri, vertices)
    return p.boundary_length, p.is_patch


def cut_size(tri: CombinatorialMap, vertices: Iterable[int]) -> int:
    """Edges with exactly one end in ``vertices`` (boundary length of the dual disc)."""
    xs = set(vertices)
    return sum(1 for v in xs for u in tri.rotations[v] if u not in xs)


# ---------------------------------------------------------------------------
# Moats
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Moat:
    base: frozenset[int]
    width: int
    faces: frozenset[int]
    bands: tuple[frozenset[int], ...]
    regions: tuple[frozenset[int], ...]

    @property
    def area(self) -> int:
        return len(self.faces)


def _grow(tri: Triangulation, base: set[int], width: int, strict: bool):
    region_faces = _induced_faces(tri, base)
    verts = set(base)
    bands: list[frozenset[int]] = []
    regions: list[frozenset[int]] = []
    for i in range(width):
        regions.append(frozenset(verts))
        if strict:
            rest = set(range(tri.n)) - verts
            if not rest or not _induced_connected(tri, rest):
                raise GrowthOverflow(f"region after {i} steps no longer leaves a disc")
        band = set()
        for v in verts:
            for f in tri.vertex_faces[v]:
                if f not in region_faces:
                    band.add(f)
        bands.append(frozenset(band))
        region_faces |= band
        for f in band:
            verts.update(tri.faces[f])
    return bands, regions


def moat(tri: Triangulation, base: Iterable[int], width: int) -> Moat:
    """Faces of the width-``width`` moat around ``base`` (union of all bands).

    Band ``i + 1`` is every face outside the current region touching one of
    its vertices; the region then absorbs the band.
    """
    xs = set(base)
    if width < 0:
        raise ValueError("width must be non-negative")
    if not make_patch(tri, xs).is_patch:
        raise ValueError("moat base is not a patch")
    bands, regions = _grow(tri, xs, width, strict=True)
    faces = frozenset().union(*bands) if bands else frozenset()
    return Moat(frozenset(xs), width, faces, tuple(bands), tuple(regions))


@dataclass(frozen=True)
class MoatIdentityReport:
    curvature: int
    boundary_length: int
    base_area: int
    width: int
    moat_area: int
    first_band_area: int | None
    precondition: bool
    precondition_failure: str | None
    band_identity: bool | None
    area_identity: bool | None
    isoperimetric_bound: bool | None

    @property
    def passed(self) -> bool:
        checks = (self.band_identity, self.area_identity, self.isoperimetric_bound)
        return self.precondition and all(c is not False for c in checks)


def moat_identities_check(tri: Triangulation, base: Iterable[int], width: int) -> MoatIdentityReport:
    """Check the band-area, moat-area and isoperimetric moat identities.

    Requires each grown region ``L u Mt^i(L)``, ``0 <= i < width``, to be a
    patch with the curvature of ``L``, induced by its vertices, and (for
    ``i < width - 1``) to have a closed-disc complement; otherwise nothing
    is asserted and the first violation is reported.
    """
    xs = set(base)
    p = make_patch(tri, xs)
    c, b, a = p.curvature, p.boundary_length, p.area
    failure = None
    if not p.is_patch:
        failure = "base is not a patch"
    bands: list[frozenset[int]] = []
    if failure is None:
        try:
            bands, regions = _grow(tri, xs, width, strict=True)
        except GrowthOverflow as exc:
            failure = str(exc)
            regions = ()
        faces_so_far = set(p.faces)
        for i, reg in enumerate(regions):
            q = make_patch(tri, reg)
            if not q.is_patch:
                failure = f"region after {i} steps is not a patch"
                break
            if q.curvature != c:
                failure = f"region after {i} steps has curvature {q.curvature} != {c}"
                break
            if q.faces != faces_so_far:
                failure = f"region after {i} steps is not induced by its vertices"
                break
            # the boundary recursion |d(L u Mt^(i+1))| = |d(L u Mt^i)| + 6 - c reads the new
            # boundary off the complement, which must then be a closed disc
            if i < width - 1 and not is_closed_disc(tri, set(range(tri.n)) - reg):
                failure = f"complement of the region after {i} steps is not a closed disc"
                break
            faces_so_far |= bands[i]
    area = sum(len(x) for x in bands)
    if failure is not None:
        return MoatIdentityReport(c, b, a, width, area, len(bands[0]) if bands else None,
                                  False, failure, None, None, None)
    first = len(bands[0]) if bands else None
    band_ok = None if first is None else first == 2 * b + 6 - c
    area_ok = area == 2 * width * b + (6 - c) * width * width
    iso = None
    if 0 < c < 6:
        # area >= (6-c) w^2 + 2 w sqrt((6-c) A), in squared integer form
        slack = area - (6 - c) * width * width
        iso = slack >= 0 and slack * slack >= 4 * width * width * (6 - c) * a
    return MoatIdentityReport(c, b, a, width, area, first, True, None, band_ok, area_ok, iso)


@dataclass(frozen=True)
class IsoperimetricReport:
    curvature: int
    boundary_length: int
    area: int
    holds: bool
    equality: bool
    low_degree_interior: int
    equality_condition: bool


def isoperimetric_check(tri: Triangulation, vertices: Iterable[int]) -> IsoperimetricReport:
    """``|dL|^2 >= (6-c) area L``; at equality at most one interior vertex has degree < 6."""
    p = make_patch(tri, vertices)
    if not p.is_patch:
        raise NotApplicable("vertex set is not a patch")
    c = p.curvature
    if c >= 6:
        raise NotApplicable(f"curvature {c} >= 6")
    lhs = p.boundary_length ** 2
    rhs = (6 - c) * p.area
    low = sum(1 for u in p.interior if len(tri.rotations[u]) < 6)
    eq = lhs == rhs
    return IsoperimetricReport(c, p.boundary_length, p.area, lhs >= rhs, eq, low,
                               (not eq) or low <= 1)


def bfs_patch(tri: Triangulation, start: int, size: int, order: Sequence[int] | None = None) -> set[int]:
    """Grow a vertex set from ``start`` in BFS order, keeping it a patch.

    Candidates that would break the patch property are skipped. ``order``
    optionally permutes tie-breaking among frontier vertices.
    """
    rank = {v: i for i, v in enumerate(order)} if order is not None else None
    xs = {start}
    queue = deque(sorted(tri.rotations[start], key=(rank.__getitem__ if rank else None)))
    seen = {start, *queue}
    while queue and len(xs) < size:
        v = queue.popleft()
        cand = xs | {v}
        if make_patch(tri, cand).is_patch:
            xs = cand
            for u in sorted(tri.rotations[v], key=(rank.__getitem__ if rank else None)):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return xs
