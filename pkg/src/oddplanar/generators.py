"""Constructors for the graph families used throughout the package.

Goldberg-Coxeter triangulations are built exactly on the Eisenstein lattice
``Z[w]`` with ``w = exp(i*pi/3)``: a lattice point ``a + b*w`` is the integer
pair ``(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curvature import Patch, Triangulation, make_patch
from .planar_map import CombinatorialMap, dual

# ---------------------------------------------------------------------------
# Platonic seeds
# ---------------------------------------------------------------------------

_TETRA_FACES = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]


def _icosa_faces() -> list[tuple[int, int, int]]:
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces = []
    for k in range(5):
        i, j = up[k], up[(k + 1) % 5]
        li, lj = lo[k], lo[(k + 1) % 5]
        faces += [(0, i, j), (j, i, li), (j, li, lj), (lj, li, 11)]
    return faces


def platonic(name: str) -> CombinatorialMap:
    """``tetrahedron`` / ``icosahedron`` (triangulations) or ``dodecahedron``."""
    if name == "tetrahedron":
        return Triangulation.from_map(CombinatorialMap.from_faces(_TETRA_FACES).canonical())
    if name == "icosahedron":
        return Triangulation.from_map(CombinatorialMap.from_faces(_icosa_faces()).canonical())
    if name == "dodecahedron":
        return dual(platonic("icosahedron"))[0].canonical()
    raise ValueError(f"unknown platonic solid {name!r}")


def prism(k: int) -> CombinatorialMap:
    """Cubic ``k``-gonal prism (two ``k``-gons joined by ``k`` squares)."""
    if k < 3:
        raise ValueError("prism needs k >= 3")
    top = list(range(k))
    bot = list(range(k, 2 * k))
    faces = [tuple(top), tuple(reversed(bot))]
    for i in range(k):
        j = (i + 1) % k
        faces.append((top[j], top[i], bot[i], bot[j]))
    return CombinatorialMap.from_faces(faces).canonical()


# ---------------------------------------------------------------------------
# Eisenstein integers
# ---------------------------------------------------------------------------

Eis = tuple[int, int]


def _mul(x: Eis, y: Eis) -> Eis:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c + b * d)


def _conj(x: Eis) -> Eis:
    a, b = x
    return (a + b, -b)


def _norm(x: Eis) -> int:
    a, b = x
    return a * a + a * b + b * b


def _add(x: Eis, y: Eis) -> Eis:
    return (x[0] + y[0], x[1] + y[1])


def _sub(x: Eis, y: Eis) -> Eis:
    return (x[0] - y[0], x[1] - y[1])


def _div_exact(x: Eis, y: Eis) -> Eis:
    num = _mul(x, _conj(y))
    n = _norm(y)
    if num[0] % n or num[1] % n:
        raise ArithmeticError("inexact Eisenstein division")
    return (num[0] // n, num[1] // n)


_OMEGA: Eis = (0, 1)


# ---------------------------------------------------------------------------
# Goldberg-Coxeter
# ---------------------------------------------------------------------------


_SEED_ALIASES = {"icosa": "icosahedron", "tetra": "tetrahedron"}


@dataclass(frozen=True)
class GCSpec:
    seed: str
    i: int
    j: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "seed", _SEED_ALIASES.get(self.seed, self.seed))
        if self.seed not in ("icosahedron", "tetrahedron"):
            raise ValueError(f"seed must be icosahedron or tetrahedron, got {self.seed!r}")
        if self.i < 1 or self.j < 0:
            raise ValueError("Goldberg-Coxeter vector needs i >= 1, j >= 0")

    @property
    def multiplier(self) -> int:
        return self.i * self.i + self.i * self.j + self.j * self.j

    @property
    def area(self) -> int:
        return (20 if self.seed == "icosahedron" else 4) * self.multiplier

    @property
    def full_symmetry(self) -> bool:
        return self.j == 0 or self.j == self.i


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def goldberg_coxeter(seed: str | GCSpec, i: int | None = None, j: int | None = None) -> Triangulation:
    """Paste the triangular lattice patch spanned by ``(i, j)`` into every seed face.

    Each seed face ``(A, B, C)`` gets the frame ``A = 0, B = v, C = v*w`` with
    ``v = i + j*w``. Lattice points on shared seed edges are identified by the
    rotation-plus-translation taking one frame to its neighbour, and each unit
    lattice triangle is assigned to the seed face containing its centroid.
    """
    spec = seed if isinstance(seed, GCSpec) else GCSpec(seed, int(i), int(j))
    base = platonic(spec.seed)
    v: Eis = (spec.i, spec.j)
    N = spec.multiplier
    corners = [(0, 0), v, _mul(v, _OMEGA)]
    seed_faces = base.faces

    def bary(z: Eis) -> tuple[int, int]:
        return _mul(z, _conj(v))

    def inside(z: Eis) -> bool:
        s, t = bary(z)
        return s >= 0 and t >= 0 and s + t <= N

    # frame transfer across each seed edge: (face, corner-from, corner-to) -> (face', alpha, beta)
    corner_of = [{x: k for k, x in enumerate(cyc)} for cyc in seed_faces]
    transfer: dict[tuple[int, int, int], tuple[int, Eis, Eis]] = {}
    for f, cyc in enumerate(seed_faces):
        for k in range(3):
            X, Y = cyc[k], cyc[(k + 1) % 3]
            g = base.face_of_dart(Y, X)
            pX, pY = corners[k], corners[(k + 1) % 3]
            qX, qY = corners[corner_of[g][X]], corners[corner_of[g][Y]]
            alpha = _div_exact(_sub(qY, qX), _sub(pY, pX))
            beta = _sub(qX, _mul(alpha, pX))
            transfer[(f, k, (k + 1) % 3)] = (g, alpha, beta)

    def across(f: int, z: Eis) -> tuple[int, Eis]:
        s, t = bary(z)
        if t < 0:
            key = (f, 0, 1)
        elif s + t > N:
            key = (f, 1, 2)
        elif s < 0:
            key = (f, 2, 0)
        else:
            return f, z
        g, alpha, beta = transfer[key]
        z2 = _add(_mul(alpha, z), beta)
        if not inside(z2):
            raise AssertionError("lattice point crosses more than one seed edge")
        return g, z2

    a_lo, a_hi = -spec.j - 1, spec.i + 1
    b_lo, b_hi = -1, spec.i + spec.j + 1
    uf = _UnionFind()
    for f in range(len(seed_faces)):
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                z = (a, b)
                if not inside(z):
                    continue
                uf.add((f, z))
                s, t = bary(z)
                for on_edge, key in ((t == 0, (f, 0, 1)), (s + t == N, (f, 1, 2)), (s == 0, (f, 2, 0))):
                    if on_edge:
                        g, alpha, beta = transfer[key]
                        w = _add(_mul(alpha, z), beta)
                        uf.add((g, w))
                        uf.union((f, z), (g, w))

    triangles: dict[frozenset, tuple] = {}
    for f in range(len(seed_faces)):
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                for tri, cen in (
                    (((a, b), (a + 1, b), (a, b + 1)), (3 * a + 1, 3 * b + 1)),
                    (((a + 1, b), (a + 1, b + 1), (a, b + 1)), (3 * a + 2, 3 * b + 2)),
                ):
                    s, t = bary(cen)
                    if s < 0 or t < 0 or s + t > 3 * N:
                        continue
                    cls = tuple(uf.find(across(f, z)) for z in tri)
                    triangles.setdefault(frozenset(cls), cls)
    if len(triangles) != spec.area:
        raise AssertionError(f"expected {spec.area} triangles, built {len(triangles)}")
    ids: dict = {}
    for cls in sorted(triangles.values()):
        for x in cls:
            ids.setdefault(x, len(ids))
    faces = [tuple(ids[x] for x in cls) for cls in triangles.values()]
    m = CombinatorialMap.from_faces(faces, n=len(ids))
    return Triangulation.from_map(m.canonical())


def gc_fullerene(i: int, j: int, seed: str = "icosahedron") -> CombinatorialMap:
    """Cubic dual of a Goldberg-Coxeter triangulation, canonically numbered."""
    return dual(goldberg_coxeter(seed, i, j))[0].canonical()


# ---------------------------------------------------------------------------
# Cone discs D_r(c)
# ---------------------------------------------------------------------------


def _cone(m: int, radius: int):
    """Cone of ``m`` lattice wedges of 60 degrees, up to graph radius ``radius``.

    Vertices are ``(k, a, b)`` with ``a >= 1`` (point ``a + b*w`` of wedge
    ``k``) plus the apex ``"o"``; the ray ``a = 0`` of wedge ``k`` is glued
    to the ray ``b = 0`` of wedge ``k + 1``. Edges are kept as distinct
    lattice segments, so loops and parallel edges survive for ``m <= 2``.
    Returns (triangles, edges) over these vertex keys; triangles are
    counter-clockwise.
    """

    def key(k: int, a: int, b: int):
        if a == 0 and b == 0:
            return "o"
        if a == 0:
            return ((k + 1) % m, b, 0)
        return (k % m, a, b)

    tris = []
    edges = []
    for k in range(m):
        for a in range(radius + 1):
            for b in range(radius + 1 - a):
                # lattice segments from (a, b) in directions 1, w, w - 1
                for da, db in ((1, 0), (0, 1), (-1, 1)):
                    a2, b2 = a + da, b + db
                    if a2 < 0 or b2 < 0 or a2 + b2 > radius:
                        continue
                    if a == 0 and a2 == 0:
                        continue  # lies on the glued ray; owned by wedge k + 1
                    edges.append((key(k, a, b), key(k, a2, b2), a + b, a2 + b2))
                if a + b + 1 <= radius:
                    tris.append(tuple(key(k, *p) for p in ((a, b), (a + 1, b), (a, b + 1))))
                if a + b + 2 <= radius:
                    tris.append(tuple(key(k, *p) for p in ((a + 1, b), (a + 1, b + 1), (a, b + 1))))
    return tris, edges


@dataclass(frozen=True)
class Disc:
    """Counts for ``D_r(c)`` and its dual disc, measured on the cone model.

    ``patch`` is the same disc inside a sphere triangulation (a double cone)
    when the centre degree ``6 - c`` is at least 3; for ``c >= 4`` the disc
    only exists as a polygonal surface and ``patch`` is ``None``.
    """

    c: int
    r: int
    vertex_count: int
    area: int
    boundary_length: int
    dual_face_count: int
    dual_boundary_length: int
    dual_face_sizes: dict[int, int]
    patch: Patch | None
    host: Triangulation | None


def double_cone(m: int, radius: int) -> tuple[Triangulation, int]:
    """Sphere triangulation from two ``m``-wedge cones glued along their rims.

    Returns the triangulation and the index of the first apex. The apexes
    have degree ``m``; every vertex at distance ``< radius`` from an apex
    other than the apex itself has degree 6.
    """
    if m < 3 or radius < 1:
        raise ValueError("double cone needs m >= 3 and radius >= 1")
    tris, _ = _cone(m, radius)

    def dist(x) -> int:
        return 0 if x == "o" else x[1] + x[2]

    def side(x, s: int):
        return ("rim", x) if x != "o" and dist(x) == radius else (s, x)

    faces = [tuple(side(x, 0) for x in t) for t in tris]
    faces += [tuple(side(x, 1) for x in reversed(t)) for t in tris]
    ids: dict = {}
    ids[(0, "o")] = 0
    for f in faces:
        for x in f:
            ids.setdefault(x, len(ids))
    m_ = CombinatorialMap.from_faces([tuple(ids[x] for x in f) for f in faces], n=len(ids))
    return Triangulation.from_map(m_), 0


def disc(c: int, r: int) -> Disc:
    if not 1 <= c <= 5:
        raise ValueError("c must be in 1..5")
    if r < 0:
        raise ValueError("r must be >= 0")
    m = 6 - c
    tris, edges = _cone(m, r + 1)
    inner_tris = [t for t in tris if all(x == "o" or x[1] + x[2] <= r for x in t)]
    inner_edges = [e for e in edges if e[2] <= r and e[3] <= r]
    cut = sum(1 for e in edges if (e[2] <= r) != (e[3] <= r))
    verts = {"o"} | {x for e in inner_edges for x in e[:2]}
    # boundary walk: a segment in one inner triangle counts once, in none twice
    incid = [0] * len(inner_edges)
    index: dict = {}
    for idx, e in enumerate(inner_edges):
        index.setdefault(frozenset(e[:2]), []).append(idx)
    for t in inner_tris:
        for p, q in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            cands = index[frozenset((p, q))]
            # parallel segments only occur for m <= 2; spread incidences over them
            k = min(cands, key=lambda i: incid[i])
            incid[k] += 1
    boundary = 0
    for k in incid:
        boundary += max(0, 2 - k)
    dual_sizes = {6 - c: 1}
    if len(verts) > 1:
        dual_sizes[6] = len(verts) - 1
    patch = host = None
    if m >= 3:
        host, apex = double_cone(m, r + 2)
        patch = make_patch(host, host.ball([apex], r))
    return Disc(
        c=c,
        r=r,
        vertex_count=len(verts),
        area=len(inner_tris),
        boundary_length=boundary,
        dual_face_count=len(verts),
        dual_boundary_length=cut,
        dual_face_sizes=dual_sizes,
        patch=patch,
        host=host,
    )


# ---------------------------------------------------------------------------
# Pentagon/heptagon family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family57:
    """Cubic plane graph from ``k`` rings between two caps.

    ``packing`` lists pairwise edge-disjoint odd faces (face indices of
    ``graph``).
    """

    k: int
    graph: CombinatorialMap
    packing: tuple[int, ...]


def _rings_to_map(circles: list[list[int]], spokes: list[tuple[int, int, int]]):
    """Concentric circles of angular positions joined by radial spokes.

    ``circles[c]`` holds the angular positions (in units of 18 degrees) of the
    vertices on circle ``c``; a spoke ``(c, angle, c + 1)`` joins the vertices
    at ``angle`` on circles ``c`` and ``c + 1``. The rotation at a vertex is,
    clockwise from the outward direction: outward spoke, clockwise circle
    neighbour, inward spoke, counter-clockwise circle neighbour.
    """
    vid: dict[tuple[int, int], int] = {}
    for c, angles in enumerate(circles):
        for a in sorted(angles):
            vid[(c, a)] = len(vid)
    out_spoke = {(c, a) for c, a, _ in spokes}
    in_spoke = {(c + 1, a) for c, a, _ in spokes}
    rot: list[list[int]] = [[] for _ in vid]
    for (c, a), v in vid.items():
        ring = sorted(circles[c])
        idx = ring.index(a)
        ccw = ring[(idx + 1) % len(ring)]
        cw = ring[idx - 1]
        r = []
        if (c, a) in out_spoke:
            r.append(vid[(c + 1, a)])
        r.append(vid[(c, cw)])
        if (c, a) in in_spoke:
            r.append(vid[(c - 1, a)])
        r.append(vid[(c, ccw)])
        rot[v] = r
    return CombinatorialMap(rot), vid


def family57(k: int) -> Family57:
    """Two caps and ``k`` rings; every face has size 5 or 7.

    Angles are in units of 18 degrees (20 per turn). Cap: a pentagon at the
    odd angles ``1 + 4t`` spoked out to a 10-cycle. Ring: a 10-cycle with five
    spokes to a 15-cycle, ten spokes to a second 15-cycle, five spokes to the
    next 10-cycle; degree-2 rim vertices of one piece meet the degree-3 rim
    vertices of the next.
    """
    if k < 1:
        raise ValueError("family57 needs k >= 1")
    odd = list(range(1, 20, 2))
    even = list(range(0, 20, 2))
    at = lambda s: [(s + 4 * t) % 20 for t in range(5)]  # noqa: E731
    circles = [at(5), odd]
    spokes = [(0, a, 1) for a in at(5)]
    for _ in range(k):
        c = len(circles) - 1  # current 10-cycle rim
        circles += [sorted(even + at(3)), sorted(even + at(5)), odd]
        spokes += [(c, a, c + 1) for a in at(3)]
        spokes += [(c + 1, a, c + 2) for a in even]
        spokes += [(c + 2, a, c + 3) for a in at(5)]
    c = len(circles) - 1
    circles.append(at(3))
    spokes += [(c, a, c + 1) for a in at(3)]
    g, vid = _rings_to_map(circles, spokes)

    # certificate: two non-adjacent cap pentagons per cap, five alternate
    # pentagons in the middle layer of each ring
    chosen = []
    last = len(circles) - 1

    def face_through(c1: int, a1: int, c2: int, a2: int) -> int:
        return g.face_of_dart(vid[(c1, a1)], vid[(c2, a2)])

    # inner cap: pentagons between circles 0 and 1, entered along a spoke
    chosen.append(face_through(1, 5, 0, 5))
    chosen.append(face_through(1, 13, 0, 13))
    for ring in range(k):
        c3 = 2 + 3 * ring  # first 15-cycle of this ring
        for a in (4, 8, 12, 16, 0):
            chosen.append(face_through(c3, a, c3 + 1, a))
    chosen.append(face_through(last - 1, 3, last, 3))
    chosen.append(face_through(last - 1, 11, last, 11))
    perm, _ = g.canonical_labeling()
    canon = g.canonical()
    mapped = []
    for f in chosen:
        u, w = g.faces[f][0], g.faces[f][1]
        mapped.append(canon.face_of_dart(perm[u], perm[w]))
    return Family57(k, canon, tuple(mapped))


# ---------------------------------------------------------------------------
# Worked curvature instance
# ---------------------------------------------------------------------------


def five_patch_example() -> tuple[Triangulation, frozenset[int]]:
    """A 14-vertex sphere triangulation containing a 5-patch of area 3.

    The patch is a degree-3 vertex inside a triangle whose corners have
    degrees 6, 5, 5; two moat bands around it have 7 and 9 faces. A single
    apex closes the outer pentagon.
    """
    o, a1, a2, a3 = 0, 1, 2, 3
    b1, b2, b3, b4 = 4, 5, 6, 7
    c1, c2, c3, c4, c5 = 8, 9, 10, 11, 12
    z = 13
    faces = [
        (o, a1, a2), (o, a2, a3), (o, a3, a1),
        (a1, b2, a2), (a1, b1, b2), (a1, b4, b1), (a1, a3, b4),
        (a2, b2, b3), (a2, b3, a3), (a3, b3, b4),
        (b1, c1, c2), (b1, c2, b2), (b2, c2, c3), (b2, c3, b3),
        (b3, c3, c4), (b3, c4, b4), (b4, c4, c5), (b4, c5, b1), (b1, c5, c1),
        (c1, z, c2), (c2, z, c3), (c3, z, c4), (c4, z, c5), (c5, z, c1),
    ]
    tri = Triangulation.from_map(CombinatorialMap.from_faces(faces))
    return tri, frozenset({o, a1, a2, a3})
