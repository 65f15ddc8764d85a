"""Rotation-system representation of plane graphs.

A map is stored as one cyclic neighbour list per vertex, listed clockwise.
Faces are traced by the rule "arrive at ``v`` from ``u``, leave towards the
successor of ``u`` in the rotation of ``v``", which walks every face with the
face on its left (counter-clockwise in the drawing).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class MapError(ValueError):
    """Raised when a rotation system does not describe a simple sphere map."""


class NonSimpleDual(MapError):
    """Raised when the dual of a map has a loop or a parallel edge."""


class CombinatorialMap:
    """Immutable simple plane map given by clockwise rotations.

    Vertices are ``0 .. n-1``. All derived data (edges, faces, dart/face
    incidence) is computed once in the constructor.
    """

    __slots__ = (
        "rotations",
        "edges",
        "faces",
        "_pos",
        "_edge_index",
        "_dart_face",
    )

    def __init__(self, rotations: Sequence[Sequence[int]]):
        rot = tuple(tuple(int(x) for x in r) for r in rotations)
        n = len(rot)
        if n == 0:
            raise MapError("map has no vertices")
        pos: list[dict[int, int]] = []
        for v, r in enumerate(rot):
            p = {}
            for i, u in enumerate(r):
                if not 0 <= u < n:
                    raise MapError(f"vertex {v}: neighbour {u} out of range")
                if u == v:
                    raise MapError(f"vertex {v}: self-loop")
                if u in p:
                    raise MapError(f"vertex {v}: repeated neighbour {u}")
                p[u] = i
            pos.append(p)
        for v, r in enumerate(rot):
            for u in r:
                if v not in pos[u]:
                    raise MapError(f"asymmetric adjacency: {v}->{u} without {u}->{v}")
        self.rotations = rot
        self._pos = tuple(pos)

        edges = sorted((v, u) for v in range(n) for u in rot[v] if v < u)
        self.edges = tuple(edges)
        self._edge_index = {e: i for i, e in enumerate(edges)}

        dart_face: dict[tuple[int, int], int] = {}
        faces: list[tuple[int, ...]] = []
        for v in range(n):
            for u in rot[v]:
                if (v, u) in dart_face:
                    continue
                fid = len(faces)
                cycle = []
                a, b = v, u
                while (a, b) not in dart_face:
                    dart_face[(a, b)] = fid
                    cycle.append(a)
                    a, b = b, self._succ(b, a)
                faces.append(tuple(cycle))
        self.faces = tuple(faces)
        self._dart_face = dart_face

        if n == 1:
            chi = 2  # isolated vertex: one face, no darts to trace
        else:
            chi = n - len(edges) + len(faces)
        if chi != 2 or not self._connected():
            raise MapError(f"not a connected sphere embedding (V-E+F = {chi})")

    # -- basic queries -------------------------------------------------
    def _succ(self, v: int, u: int) -> int:
        r = self.rotations[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.rotations[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    @property
    def n(self) -> int:
        return len(self.rotations)

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.rotations]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def successor(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` clockwise."""
        return self._succ(v, u)

    def position(self, v: int, u: int) -> int:
        return self._pos[v][u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def face_of_dart(self, u: int, v: int) -> int:
        """Index of the face traced through the dart ``u -> v``."""
        return self._dart_face[(u, v)]

    def face_darts(self, f: int) -> list[tuple[int, int]]:
        cyc = self.faces[f]
        return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]

    def face_size(self, f: int) -> int:
        return len(self.faces[f])

    def face_sizes(self) -> list[int]:
        return [len(f) for f in self.faces]

    def edge_faces(self, e: int) -> tuple[int, int]:
        u, v = self.edges[e]
        return self._dart_face[(u, v)], self._dart_face[(v, u)]

    def darts(self) -> Iterator[tuple[int, int]]:
        for v, r in enumerate(self.rotations):
            for u in r:
                yield (v, u)

    def euler_characteristic(self) -> int:
        return self.n - len(self.edges) + len(self.faces)

    # -- constructors and transforms ------------------------------------
    @classmethod
    def from_faces(cls, faces: Iterable[Sequence[int]], n: int | None = None) -> "CombinatorialMap":
        """Build the map whose traced faces are exactly ``faces``.

        Each face is a vertex cycle in tracing order; consecutive triples
        ``(a, b, c)`` fix ``successor(b, a) == c``.
        """
        succ: dict[int, dict[int, int]] = {}
        for face in faces:
            k = len(face)
            for i in range(k):
                a, b, c = face[i - 1], face[i], face[(i + 1) % k]
                slot = succ.setdefault(b, {})
                if a in slot:
                    raise MapError(f"dart {a}->{b} appears in two faces")
                slot[a] = c
        if n is None:
            n = max(succ) + 1 if succ else 0
        rotations = []
        for v in range(n):
            s = succ.get(v)
            if not s:
                raise MapError(f"vertex {v} lies on no face")
            start = min(s)
            r = [start]
            u = s[start]
            while u != start:
                r.append(u)
                if u not in s or len(r) > len(s):
                    raise MapError(f"vertex {v}: rotation does not close")
                u = s[u]
            if len(r) != len(s):
                raise MapError(f"vertex {v}: faces do not form a single disc around it")
            rotations.append(r)
        return cls(rotations)

    def relabel(self, perm: Sequence[int]) -> "CombinatorialMap":
        """Return the map with vertex ``v`` renamed ``perm[v]``."""
        rot: list[list[int]] = [[] for _ in range(self.n)]
        for v, r in enumerate(self.rotations):
            rot[perm[v]] = [perm[u] for u in r]
        return type(self)(rot)

    def mirror(self) -> "CombinatorialMap":
        return type(self)([list(reversed(r)) for r in self.rotations])

    def canonical_labeling(self, root: int = 0) -> tuple[list[int], list[int]]:
        """BFS numbering from ``root`` following rotation order.

        Returns ``(perm, first)``: ``perm[v]`` is the new name of ``v`` and
        ``first[v]`` is the rotation index its new list starts from (the
        neighbour it was discovered from; index 0 for the root).
        """
        order = {root: 0}
        first = [0] * self.n
        queue = deque([root])
        while queue:
            v = queue.popleft()
            r = self.rotations[v]
            i0 = first[v]
            for k in range(len(r)):
                u = r[(i0 + k) % len(r)]
                if u not in order:
                    order[u] = len(order)
                    first[u] = self._pos[u][v]
                    queue.append(u)
        return [order[v] for v in range(self.n)], first

    def canonical(self, root: int = 0) -> "CombinatorialMap":
        """Renumber by BFS from ``root`` so emitted files are reproducible."""
        perm, first = self.canonical_labeling(root)
        rot: list[list[int]] = [[] for _ in range(self.n)]
        for v, r in enumerate(self.rotations):
            d = len(r)
            rot[perm[v]] = [perm[r[(first[v] + k) % d]] for k in range(d)]
        return type(self)(rot)

    def delete_edges(self, edge_ids: Iterable[int]) -> "CombinatorialMap":
        """Submap with the given edges removed (must stay connected)."""
        gone = {self.edges[e] for e in edge_ids}
        rot = [
            [u for u in r if ((v, u) if v < u else (u, v)) not in gone]
            for v, r in enumerate(self.rotations)
        ]
        return CombinatorialMap(rot)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CombinatorialMap) and self.rotations == other.rotations

    def __hash__(self) -> int:
        return hash(self.rotations)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, e={len(self.edges)}, f={len(self.faces)})"


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualCorrespondence:
    """Face ``f`` of the primal is dual vertex ``face_to_dual_vertex[f]``;
    primal edge ``e`` crosses dual edge ``edge_bijection[e]``."""

    face_to_dual_vertex: tuple[int, ...]
    edge_bijection: tuple[int, ...]


def dual(m: CombinatorialMap) -> tuple[CombinatorialMap, DualCorrespondence]:
    """Dual map with vertex ``f`` for face ``f``.

    The dual rotation at ``f`` lists the faces across the darts of ``f`` in
    reverse tracing order, which keeps the clockwise convention so that the
    dual of the dual is the original map up to relabelling.
    """
    rot = []
    for f, cyc in enumerate(m.faces):
        k = len(cyc)
        across = [m.face_of_dart(cyc[(i + 1) % k], cyc[i]) for i in range(k)]
        across.reverse()
        if f in across:
            raise NonSimpleDual(f"face {f} is adjacent to itself (bridge in primal)")
        if len(set(across)) != k:
            raise NonSimpleDual(f"face {f} shares more than one edge with a neighbour")
        rot.append(across)
    try:
        d = CombinatorialMap(rot)
    except MapError as exc:  # pragma: no cover - guarded above
        raise NonSimpleDual(str(exc)) from exc
    bij = []
    for u, v in m.edges:
        bij.append(d.edge_id(m.face_of_dart(u, v), m.face_of_dart(v, u)))
    return d, DualCorrespondence(tuple(range(len(m.faces))), tuple(bij))


# ---------------------------------------------------------------------------
# Class membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    n: int
    is_cubic: bool
    max_face_size: int
    faces_at_most_6: bool
    is_3_connected: bool
    face_vector: tuple[int, int, int, int]
    face_histogram: dict[int, int]
    euler_identity: bool | None

    @property
    def ok(self) -> bool:
        return self.is_cubic and self.faces_at_most_6 and self.is_3_connected

    @property
    def failures(self) -> list[str]:
        out = []
        if not self.is_cubic:
            out.append("not cubic")
        if not self.faces_at_most_6:
            out.append(f"face of size {self.max_face_size} > 6")
        if not self.is_3_connected:
            out.append("not 3-connected")
        return out


def _has_articulation(adj: Sequence[Sequence[int]], removed: int) -> bool:
    """True if the graph minus ``removed`` is disconnected or has a cut vertex."""
    n = len(adj)
    start = 0 if removed != 0 else 1
    disc = [-1] * n
    low = [0] * n
    disc[removed] = -2
    disc[start] = 0
    low[start] = 0
    t = 1
    root_children = 0
    stack = [(start, -1, iter(adj[start]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if disc[u] == -2 or u == parent:
                continue
            if disc[u] == -1:
                disc[u] = low[u] = t
                t += 1
                stack.append((u, v, iter(adj[u])))
                advanced = True
                break
            low[v] = min(low[v], disc[u])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p == start:
                root_children += 1
            elif low[v] >= disc[p]:
                return True
    if root_children > 1:
        return True
    return t != n - 1


def is_3_connected(m: CombinatorialMap) -> bool:
    """Exhaustive search for a separating set of at most two vertices.

    For every vertex ``a`` the graph ``G - a`` is checked for a cut vertex,
    which covers every pair ``{a, b}``.
    """
    if m.n < 4:
        return False
    adj = m.rotations
    for a in range(m.n):
        if _has_articulation(adj, a):
            return False
    return True


def validate_class(m: CombinatorialMap) -> ClassReport:
    sizes = Counter(m.face_sizes())
    cubic = all(len(r) == 3 for r in m.rotations)
    mx = max(sizes)
    fv = (sizes.get(3, 0), sizes.get(4, 0), sizes.get(5, 0), sizes.get(6, 0))
    conn = is_3_connected(m)
    ok = cubic and mx <= 6 and conn
    identity = None
    if ok:
        t, s, p, _ = fv
        identity = 3 * t + 2 * s + p == 12
        if not identity:  # pragma: no cover - would contradict Euler's formula
            raise AssertionError(f"3t+2s+p = {3 * t + 2 * s + p} != 12")
    return ClassReport(
        n=m.n,
        is_cubic=cubic,
        max_face_size=mx,
        faces_at_most_6=mx <= 6,
        is_3_connected=conn,
        face_vector=fv,
        face_histogram=dict(sorted(sizes.items())),
        euler_identity=identity,
    )


# ---------------------------------------------------------------------------
# Bipartiteness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteResult:
    is_bipartite: bool
    coloring: tuple[int, ...] | None
    odd_faces: tuple[int, ...] = ()
    odd_cycle: tuple[int, ...] = ()


def odd_faces(m: CombinatorialMap) -> list[int]:
    return [f for f, cyc in enumerate(m.faces) if len(cyc) % 2]


def _odd_cycle(parent: dict[int, int], depth: dict[int, int], a: int, b: int) -> tuple[int, ...]:
    left, right = [a], [b]
    while left[-1] != right[-1]:
        if depth[left[-1]] >= depth[right[-1]]:
            left.append(parent[left[-1]])
        else:
            right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


def is_bipartite(m: CombinatorialMap, removed: Iterable[int] = ()) -> BipartiteResult:
    """2-colour ``m`` minus the edges ``removed``.

    Without deletions a plane map is bipartite iff it has no odd face, and the
    odd faces are returned as the obstruction. With deletions the obstruction
    is one odd cycle of the remaining graph.
    """
    gone = {m.edges[e] for e in removed}
    color = [-1] * m.n
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for s in range(m.n):
        if color[s] != -1:
            continue
        color[s] = 0
        depth[s] = 0
        parent[s] = s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in m.rotations[v]:
                if ((v, u) if v < u else (u, v)) in gone:
                    continue
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    queue.append(u)
                elif color[u] == color[v]:
                    if not gone:
                        return BipartiteResult(False, None, odd_faces=tuple(odd_faces(m)))
                    return BipartiteResult(False, None, odd_cycle=_odd_cycle(parent, depth, v, u))
    return BipartiteResult(True, tuple(color))


# ---------------------------------------------------------------------------
# Isomorphism by flag propagation
# ---------------------------------------------------------------------------


def _dart_signature(m: CombinatorialMap, u: int, v: int) -> tuple[int, int, int, int]:
    return (
        len(m.rotations[u]),
        len(m.rotations[v]),
        len(m.faces[m.face_of_dart(u, v)]),
        len(m.faces[m.face_of_dart(v, u)]),
    )


def _propagate(a: CombinatorialMap, b: CombinatorialMap, u0: int, v0: int,
               x0: int, y0: int, sign: int) -> list[int] | None:
    """Extend ``u0 -> x0``, ``v0 -> y0`` to a map isomorphism, or fail.

    ``sign = -1`` reverses rotations (orientation-reversing isomorphism).
    """
    if len(a.rotations[u0]) != len(b.rotations[x0]):
        return None
    phi = [-1] * a.n
    used = [False] * b.n
    phi[u0] = x0
    used[x0] = True
    queue = deque([(u0, a.position(u0, v0), x0, b.position(x0, y0))])
    while queue:
        u, iu, x, ix = queue.popleft()
        ru, rx = a.rotations[u], b.rotations[x]
        d = len(ru)
        for k in range(d):
            p = ru[(iu + k) % d]
            q = rx[(ix + sign * k) % d]
            if phi[p] == -1:
                if used[q] or len(a.rotations[p]) != len(b.rotations[q]):
                    return None
                phi[p] = q
                used[q] = True
                queue.append((p, a.position(p, u), q, b.position(q, x)))
            elif phi[p] != q:
                return None
    return phi


def map_isomorphisms(a: CombinatorialMap, b: CombinatorialMap,
                     reflections: bool = True) -> Iterator[tuple[list[int], int]]:
    """Yield every isomorphism ``a -> b`` as ``(vertex map, orientation sign)``.

    A fixed dart of ``a`` is sent to every compatible dart of ``b`` and the
    assignment is propagated along rotations; each success is a distinct map
    isomorphism.
    """
    if a.n != b.n or len(a.edges) != len(b.edges) or sorted(a.face_sizes()) != sorted(b.face_sizes()):
        return
    if a.n == 1:
        yield [0], 1
        return
    u0 = min(range(a.n), key=lambda v: (len(a.rotations[v]), v))
    v0 = a.rotations[u0][0]
    sig = _dart_signature(a, u0, v0)
    rsig = (sig[0], sig[1], sig[3], sig[2])
    for x, y in b.darts():
        s = _dart_signature(b, x, y)
        for sign in ((1, -1) if reflections else (1,)):
            want = sig if sign == 1 else rsig
            if s != want:
                continue
            phi = _propagate(a, b, u0, v0, x, y, sign)
            if phi is not None:
                yield phi, sign


def are_isomorphic(a: CombinatorialMap, b: CombinatorialMap, reflections: bool = True) -> bool:
    return next(map_isomorphisms(a, b, reflections), None) is not None
