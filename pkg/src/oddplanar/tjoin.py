"""Minimum T-joins and moat-packing certificates.

A minimum T-join is the symmetric difference of shortest paths between the
pairs of a minimum-weight perfect matching on the T-vertex distance metric.
Moat packings give the matching lower bound: a valid packing of total width
``W`` contains ``W`` disjoint T-cuts, so ``W <= nu(K, T) <= tau(K, T)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import networkx as nx
import numpy as np

from .curvature import GrowthOverflow, Triangulation, _grow, make_patch
from .planar_map import CombinatorialMap


class NotExtremal(ValueError):
    """The triangulation is not the dual of an icosahedral GC(k, k) fullerene."""


# ---------------------------------------------------------------------------
# T sets and the metric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TSet:
    vertices: frozenset[int]
    source: str = "user"

    def __post_init__(self) -> None:
        if len(self.vertices) % 2:
            raise ValueError(f"|T| = {len(self.vertices)} is odd")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(sorted(self.vertices))


def odd_vertex_set(m: CombinatorialMap) -> TSet:
    return TSet(frozenset(v for v, r in enumerate(m.rotations) if len(r) % 2), "odd-degree")


def _as_tset(T: TSet | Iterable[int]) -> TSet:
    return T if isinstance(T, TSet) else TSet(frozenset(T))


def _bfs(m: CombinatorialMap, s: int) -> list[int]:
    dist = [-1] * m.n
    dist[s] = 0
    q = deque([s])
    while q:
        v = q.popleft()
        for u in m.rotations[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


@dataclass(frozen=True)
class TMetric:
    """Distances between the sorted ``terminals``; ``paths[(i, j)]`` (``i < j``)
    is the lexicographically smallest shortest vertex sequence from terminal
    ``i`` to terminal ``j``."""

    terminals: tuple[int, ...]
    dist: np.ndarray
    paths: dict[tuple[int, int], tuple[int, ...]] = field(repr=False)


def t_metric(m: CombinatorialMap, T: TSet | Iterable[int]) -> TMetric:
    terms = tuple(sorted(_as_tset(T).vertices))
    k = len(terms)
    from_term = {t: _bfs(m, t) for t in terms}
    dist = np.zeros((k, k), dtype=np.int64)
    paths = {}
    for i, j in itertools.combinations(range(k), 2):
        s, t = terms[i], terms[j]
        dt = from_term[t]
        if dt[s] < 0:
            raise ValueError(f"terminals {s} and {t} are disconnected")
        dist[i, j] = dist[j, i] = dt[s]
        path = [s]
        v = s
        while v != t:
            v = min(u for u in m.rotations[v] if dt[u] == dt[v] - 1)
            path.append(v)
        paths[(i, j)] = tuple(path)
    return TMetric(terms, dist, paths)


# ---------------------------------------------------------------------------
# Perfect matchings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    weight: int


def _check_weights(weights) -> np.ndarray:
    w = np.asarray(weights)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("weights must be a square matrix")
    if w.shape[0] % 2:
        raise ValueError(f"odd vertex count {w.shape[0]} has no perfect matching")
    if w.size and w.min() < 0:
        raise ValueError("weights must be non-negative")
    return w


def min_weight_perfect_matching(weights) -> Matching:
    """Minimum-weight perfect matching of a complete graph (blossom algorithm).

    Runs networkx's maximum-weight matching with maximum cardinality on the
    complemented weights ``W - w``; all arithmetic stays integral.
    """
    w = _check_weights(weights)
    k = w.shape[0]
    if k == 0:
        return Matching((), 0)
    top = int(w.max()) + 1
    g = nx.Graph()
    for i, j in itertools.combinations(range(k), 2):
        g.add_edge(i, j, weight=top - int(w[i, j]))
    mate = nx.max_weight_matching(g, maxcardinality=True)
    pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in mate))
    if len(pairs) * 2 != k:  # pragma: no cover - complete graph of even order
        raise AssertionError("matching engine returned a non-perfect matching")
    return Matching(pairs, int(sum(int(w[i, j]) for i, j in pairs)))


def matching_oracle(weights) -> Matching:
    """Exact minimum perfect matching by dynamic programming over subsets."""
    w = _check_weights(weights)
    k = w.shape[0]
    if k > 20:
        raise ValueError(f"oracle limited to 20 vertices, got {k}")
    ww = [[int(x) for x in row] for row in w]

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[tuple[int, int], ...]]:
        if mask == 0:
            return 0, ()
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        out = None
        j_mask = rest
        while j_mask:
            j = (j_mask & -j_mask).bit_length() - 1
            j_mask &= j_mask - 1
            sub, pairs = best(rest & ~(1 << j))
            cand = sub + ww[i][j]
            if out is None or cand < out[0]:
                out = (cand, ((i, j),) + pairs)
        return out

    total, pairs = best((1 << k) - 1)
    return Matching(tuple(sorted(pairs)), total)


# ---------------------------------------------------------------------------
# T-joins
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TJoin:
    edges: frozenset[int]
    pairs: tuple[tuple[int, int], ...]
    matching_weight: int

    @property
    def size(self) -> int:
        return len(self.edges)


def min_tjoin(m: CombinatorialMap, T: TSet | Iterable[int]) -> TJoin:
    T = _as_tset(T)
    if not T.vertices:
        return TJoin(frozenset(), (), 0)
    metric = t_metric(m, T)
    match = min_weight_perfect_matching(metric.dist)
    join: set[int] = set()
    for i, j in match.pairs:
        p = metric.paths[(i, j)]
        for a, b in zip(p, p[1:]):
            join ^= {m.edge_id(a, b)}
    pairs = tuple((metric.terminals[i], metric.terminals[j]) for i, j in match.pairs)
    tj = TJoin(frozenset(join), pairs, match.weight)
    if not verify_tjoin(m, T, tj.edges):  # pragma: no cover - parity is preserved by construction
        raise AssertionError("constructed join fails the parity condition")
    return tj


def parity_violations(m: CombinatorialMap, T: TSet | Iterable[int], edge_ids: Iterable[int]) -> list[int]:
    """Vertices where the degree parity in ``(V, J)`` disagrees with ``T``."""
    T = _as_tset(T)
    deg = [0] * m.n
    for e in edge_ids:
        u, v = m.edges[e]
        deg[u] ^= 1
        deg[v] ^= 1
    return [v for v in range(m.n) if deg[v] != (v in T.vertices)]


def verify_tjoin(m: CombinatorialMap, T: TSet | Iterable[int], edge_ids: Iterable[int]) -> bool:
    return not parity_violations(m, T, edge_ids)


def brute_force_tjoin(m: CombinatorialMap, T: TSet | Iterable[int]) -> int:
    """Smallest T-join by trying edge subsets in order of size."""
    T = _as_tset(T)
    target = 0
    for v in T.vertices:
        target |= 1 << v
    masks = [(1 << u) | (1 << v) for u, v in m.edges]
    for size in range(len(masks) + 1):
        for combo in itertools.combinations(masks, size):
            acc = 0
            for x in combo:
                acc ^= x
            if acc == target:
                return size
    raise ValueError("no T-join exists (disconnected T)")


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


def refine(tri: Triangulation) -> Triangulation:
    """Subdivide every edge and split every face into four.

    Original vertices keep their ids; the midpoint of edge ``e`` is vertex
    ``n + e``.
    """
    n = tri.n
    mid = lambda a, b: n + tri.edge_id(a, b)  # noqa: E731
    faces = []
    for a, b, c in tri.faces:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
    return Triangulation.from_map(CombinatorialMap.from_faces(faces, n=n + len(tri.edges)))


# ---------------------------------------------------------------------------
# Moat packings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoatPackingCertificate:
    entries: tuple[tuple[frozenset[int], int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Iterable[int], int]]) -> "MoatPackingCertificate":
        return cls(tuple((frozenset(r), int(w)) for r, w in pairs))

    @property
    def total_width(self) -> int:
        return sum(w for _, w in self.entries)


@dataclass(frozen=True)
class PackingVerdict:
    valid: bool
    total_width: int
    checks: dict[str, bool | None]
    messages: dict[str, str]
    curvature_classes: tuple[int, ...]

    def lines(self) -> list[str]:
        out = []
        for name in ("M1", "M2", "M3", "M4", "M5", "M6", "layers"):
            ok = self.checks.get(name)
            status = "n/a" if ok is None else ("pass" if ok else "FAIL")
            msg = self.messages.get(name, "")
            out.append(f"{name}: {status}" + (f" ({msg})" if msg else ""))
        return out


def verify_moat_packing(tri: Triangulation, cert: MoatPackingCertificate) -> PackingVerdict:
    """Check packing properties M1, M3-M6 plus odd parity of every layer cut.

    M2 (total width equals nu) is not decidable from a certificate and is
    reported as a lower bound only.
    """
    checks: dict[str, bool | None] = {"M2": None}
    msgs: dict[str, str] = {"M2": "certified lower bound only"}
    entries = cert.entries
    for root, w in entries:
        bad = [v for v in root if not 0 <= v < tri.n]
        if bad:
            raise ValueError(f"certificate refers to unknown vertex {bad[0] + 1}")
        if not root:
            raise ValueError("certificate has an empty root")
        if w < 1:
            raise ValueError(f"width {w} < 1")

    # M3 roots are patches, M4 curvature classes
    classes = []
    m3 = True
    for root, _ in entries:
        p = make_patch(tri, root)
        classes.append(p.curvature)
        if not p.is_patch and m3:
            m3 = False
            msgs["M3"] = f"root {_fmt(root)} is not a patch"
    checks["M3"] = m3
    m4 = all(c in (1, 3, 5) for c in classes)
    checks["M4"] = m4
    if not m4:
        i = next(i for i, c in enumerate(classes) if c not in (1, 3, 5))
        msgs["M4"] = f"root {_fmt(entries[i][0])} has curvature {classes[i]}"

    # M6 laminar
    m6 = True
    for (x, _), (y, _) in itertools.combinations(entries, 2):
        if x & y and not (x <= y or y <= x):
            m6 = False
            msgs["M6"] = f"roots {_fmt(x)} and {_fmt(y)} cross"
            break
    checks["M6"] = m6

    # M5 inclusion-minimal roots are singletons
    m5 = True
    for x, _ in entries:
        minimal = not any(y < x for y, _ in entries)
        if minimal and len(x) != 1:
            m5 = False
            msgs["M5"] = f"minimal root {_fmt(x)} is not a singleton"
            break
    checks["M5"] = m5

    # M1 disjoint moats; layers are odd cuts
    owner: dict[int, int] = {}
    m1 = True
    layers_ok = True
    odd = {v for v, r in enumerate(tri.rotations) if len(r) % 2}
    for idx, (root, w) in enumerate(entries):
        try:
            bands, regions = _grow(tri, set(root), w, strict=True)
        except GrowthOverflow as exc:
            m1 = False
            msgs.setdefault("M1", f"moat around {_fmt(root)}: {exc}")
            continue
        for reg in regions:
            if len(odd & reg) % 2 == 0 and layers_ok:
                layers_ok = False
                msgs["layers"] = f"layer around {_fmt(root)} with {len(reg)} vertices is not a T-cut"
        for band in bands:
            for f in band:
                if f in owner and owner[f] != idx:
                    if m1:
                        other = entries[owner[f]][0]
                        msgs["M1"] = (f"moats around {_fmt(other)} and {_fmt(root)} share face "
                                      f"{_fmt(tri.faces[f])}")
                    m1 = False
                owner.setdefault(f, idx)
    checks["M1"] = m1
    checks["layers"] = layers_ok
    valid = all(checks[k] for k in ("M1", "M3", "M4", "M5", "M6", "layers"))
    return PackingVerdict(valid, cert.total_width, checks, msgs, tuple(classes))


def _fmt(vs: Iterable[int]) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(vs)) + "}"


def extremal_order(tri: Triangulation) -> int:
    """``k`` when ``tri`` looks like the dual of GC(k, k); raises NotExtremal otherwise.

    Requires twelve degree-5 vertices, all others of degree 6, area ``60k^2``
    and pairwise distance at least ``2k`` between the degree-5 vertices.
    """
    deg = tri.degrees()
    fives = [v for v, d in enumerate(deg) if d == 5]
    if len(fives) != 12 or any(d not in (5, 6) for d in deg):
        raise NotExtremal("needs twelve degree-5 vertices and all others of degree 6")
    k2, rem = divmod(tri.area, 60)
    k = int(round(k2 ** 0.5))
    if rem or k * k != k2:
        raise NotExtremal(f"area {tri.area} is not 60k^2")
    for u in fives:
        d = _bfs(tri, u)
        close = [v for v in fives if v != u and d[v] < 2 * k]
        if close:
            raise NotExtremal(f"degree-5 vertices {u + 1} and {close[0] + 1} at distance "
                              f"{d[close[0]]} < {2 * k}")
    return k


def extremal_packing(tri: Triangulation) -> MoatPackingCertificate:
    """Twelve width-``k`` moats around the degree-5 vertices of a GC(k, k) dual."""
    k = extremal_order(tri)
    fives = [v for v, r in enumerate(tri.rotations) if len(r) == 5]
    return MoatPackingCertificate.from_pairs(((v,), k) for v in fives)


def refine_certificate(tri: Triangulation, cert: MoatPackingCertificate) -> MoatPackingCertificate:
    """Carry a certificate of ``tri`` to :func:`refine` ``(tri)``, doubling widths.

    A root keeps its vertices and gains the midpoints of the edges it spans.
    """
    out = []
    for root, w in cert.entries:
        mids = {tri.n + tri.edge_id(a, b) for a in root for b in tri.rotations[a] if b in root and a < b}
        out.append((frozenset(root) | mids, 2 * w))
    return MoatPackingCertificate(tuple(out))


def layer_cuts(tri: Triangulation, cert: MoatPackingCertificate) -> list[frozenset[int]]:
    """The T-cuts ``delta(L u Mt^i(L))`` of every moat layer, as edge-id sets."""
    cuts = []
    for root, w in cert.entries:
        _, regions = _grow(tri, set(root), w, strict=True)
        for reg in regions:
            cuts.append(frozenset(tri.edge_id(v, u) for v in reg for u in tri.rotations[v] if u not in reg))
    return cuts
