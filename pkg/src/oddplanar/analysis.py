"""Odd-cycle transversals, bounds, max-cut and independence for plane maps.

The transversal is computed in the dual: with ``T`` the odd faces, a minimum
T-join of ``G*`` pulled back through the edge bijection is a minimum edge set
whose removal leaves ``G`` bipartite. Every bound comparison is done on
squared integers; decimals in reports are for reading only.

Report JSON schema (``AnalysisReport.to_dict``), see also :data:`REPORT_SCHEMA`::

    n                  int
    edges              int
    face_vector        [t, s, p, h]   counts of 3-, 4-, 5-, 6-faces
    face_histogram     {size: count}  keys are decimal strings
    class_ok           bool           cubic, 3-connected, faces <= 6
    class_failures     [str]
    tau_odd            int
    transversal        [[u, v]]       1-indexed edges
    bound_general_sq   [num, den]     (p + 3t) n / 5
    bound_12_sq        [num, den]     12 n / 5
    bound_no_pentagon_sq  [num, den] or null   t n / 3 when p = 0
    bound_holds        bool or null   5 tau^2 <= (p + 3t) n (null outside the class)
    aut_order          int or null
    equality           {icosahedral, tetrahedral: {...flags, holds, k}}
    maxcut             int
    bipartition        str            '0'/'1' per vertex
    alpha_lower        [num, den]     n/2 - tau/2
    alpha_witness      [int]          1-indexed independent set of size >= alpha_lower
    alpha_exact        int or null
    nu_certificate     int
    nu_method          str
    nu_cycles          [[int]]        1-indexed vertex sequences
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .curvature import Triangulation
from .independence import BudgetExceeded, map_independence_number, maximum_independent_set
from .planar_map import CombinatorialMap, ClassReport, dual, is_bipartite, map_isomorphisms, validate_class
from .tjoin import NotExtremal, extremal_packing, layer_cuts, min_tjoin

FACE_PACKING_LIMIT = 400


# ---------------------------------------------------------------------------
# Transversal, max-cut, independence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OCTResult:
    tau: int
    edges: frozenset[int]
    odd_faces: tuple[int, ...]
    coloring: tuple[int, ...]


def oct(m: CombinatorialMap) -> OCTResult:
    """Minimum odd cycle transversal ``J`` of ``m`` and the 2-colouring of ``m - J``."""
    d, corr = dual(m)
    odd = tuple(f for f, cyc in enumerate(m.faces) if len(cyc) % 2)
    tj = min_tjoin(d, [corr.face_to_dual_vertex[f] for f in odd])
    back = {de: e for e, de in enumerate(corr.edge_bijection)}
    J = frozenset(back[de] for de in tj.edges)
    res = is_bipartite(m, removed=J)
    if not res.is_bipartite:  # pragma: no cover - guaranteed by duality
        raise AssertionError("G minus J still has an odd cycle")
    coloring = res.coloring
    if coloring[0] == 1:
        coloring = tuple(1 - c for c in coloring)
    return OCTResult(len(J), J, odd, coloring)


@dataclass(frozen=True)
class MaxCut:
    size: int
    side: tuple[int, ...]
    recount: int


def cut_size_of(m: CombinatorialMap, side: Sequence[int]) -> int:
    return sum(1 for u, v in m.edges if side[u] != side[v])


def maxcut(m: CombinatorialMap, result: OCTResult | None = None) -> MaxCut:
    """Maximum cut ``|E| - tau_odd`` with the bipartition of ``m - J`` as certificate."""
    r = result or oct(m)
    recount = cut_size_of(m, r.coloring)
    size = len(m.edges) - r.tau
    if recount != size:  # pragma: no cover - J minimal implies every J edge is uncut
        raise AssertionError(f"bipartition cuts {recount} edges, expected {size}")
    return MaxCut(size, r.coloring, recount)


@dataclass(frozen=True)
class AlphaBounds:
    lower: Fraction
    witness: frozenset[int]
    exact: int | None
    exact_set: frozenset[int] | None = None


def alpha_bounds(m: CombinatorialMap, exact: bool = False, result: OCTResult | None = None,
                 budget: int | None = None) -> AlphaBounds:
    """``n/2 - tau/2`` with an explicit witness set; optionally the exact value.

    ``U`` takes the smaller endpoint of every transversal edge. ``m - U`` is
    bipartite and the larger colour class of ``m - J`` restricted to it is
    independent.
    """
    r = result or oct(m)
    U = {min(m.edges[e]) for e in r.edges}
    classes = ([v for v in range(m.n) if v not in U and r.coloring[v] == c] for c in (0, 1))
    witness = frozenset(max(classes, key=len))
    lower = Fraction(m.n, 2) - Fraction(r.tau, 2)
    if len(witness) < lower:  # pragma: no cover
        raise AssertionError("witness smaller than the lower bound")
    if not exact:
        return AlphaBounds(lower, witness, None)
    res = map_independence_number(m, budget=budget, initial=witness)
    return AlphaBounds(lower, witness, res.size, res.vertices)


def automorphism_order(m: CombinatorialMap) -> int:
    return sum(1 for _ in map_isomorphisms(m, m, reflections=True))


# ---------------------------------------------------------------------------
# Odd cycle packings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NuCertificate:
    cycles: tuple[tuple[int, ...], ...]
    method: str

    @property
    def size(self) -> int:
        return len(self.cycles)


def _cycle_edges(m: CombinatorialMap, cyc: Sequence[int]) -> list[int]:
    return [m.edge_id(a, b) for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]])]


def verify_cycle_packing(m: CombinatorialMap, cycles: Iterable[Sequence[int]]) -> bool:
    """Each entry is an odd cycle of ``m`` and no edge is used twice."""
    used: set[int] = set()
    for cyc in cycles:
        if len(cyc) % 2 == 0 or len(set(cyc)) != len(cyc):
            return False
        if any(not m.has_edge(a, b) for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]])):
            return False
        es = _cycle_edges(m, cyc)
        if used.intersection(es):
            return False
        used.update(es)
    return True


def greedy_face_packing(m: CombinatorialMap) -> list[int]:
    order = sorted((f for f, c in enumerate(m.faces) if len(c) % 2), key=lambda f: (len(m.faces[f]), min(m.faces[f]), f))
    used: set[int] = set()
    out = []
    for f in order:
        es = _cycle_edges(m, m.faces[f])
        if not used.intersection(es):
            used.update(es)
            out.append(f)
    return out


def max_face_packing(m: CombinatorialMap, initial: Iterable[int] = ()) -> list[int] | None:
    """Largest edge-disjoint family of odd faces (independent set of the face
    conflict graph), or None when the search exceeds its budget."""
    odd = [f for f, c in enumerate(m.faces) if len(c) % 2]
    if len(odd) > FACE_PACKING_LIMIT:
        return None
    idx = {f: i for i, f in enumerate(odd)}
    adj: list[set[int]] = [set() for _ in odd]
    for e in range(len(m.edges)):
        a, b = m.edge_faces(e)
        if a in idx and b in idx and a != b:
            adj[idx[a]].add(idx[b])
            adj[idx[b]].add(idx[a])
    try:
        res = maximum_independent_set(adj, budget=200_000, initial=[idx[f] for f in initial])
    except BudgetExceeded:
        return None
    return sorted(odd[i] for i in res.vertices)


def _cut_to_cycle(m: CombinatorialMap, edge_ids: Iterable[int]) -> tuple[int, ...] | None:
    es = [m.edges[e] for e in edge_ids]
    nb: dict[int, list[int]] = {}
    for u, v in es:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    if not nb or any(len(x) != 2 for x in nb.values()):
        return None
    start = min(nb)
    cyc = [start]
    prev, cur = None, start
    while True:
        a, b = nb[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        cyc.append(nxt)
        prev, cur = cur, nxt
    if len(cyc) != len(nb):
        return None
    return tuple(cyc)


def moat_cycle_packing(m: CombinatorialMap) -> list[tuple[int, ...]] | None:
    """Odd cycles dual to the layer cuts of the extremal moat packing.

    Returns None unless the dual of ``m`` is the dual of an icosahedral
    GC(k, k) map.
    """
    try:
        d, corr = dual(m)
        tri = Triangulation(d.rotations)
        cert = extremal_packing(tri)
    except (NotExtremal, ValueError):
        return None
    back = {de: e for e, de in enumerate(corr.edge_bijection)}
    cycles = []
    for cut in layer_cuts(tri, cert):
        cyc = _cut_to_cycle(m, (back[de] for de in cut))
        if cyc is None:  # pragma: no cover - bonds of a plane map are cycles of its dual
            return None
        cycles.append(cyc)
    return cycles


def nu_certificate(m: CombinatorialMap) -> NuCertificate:
    """A verified edge-disjoint odd cycle packing; its size is a lower bound on nu_odd."""
    greedy = greedy_face_packing(m)
    best = NuCertificate(tuple(tuple(m.faces[f]) for f in greedy), "greedy odd faces")
    exact = max_face_packing(m, greedy)
    if exact is not None and len(exact) > best.size:
        best = NuCertificate(tuple(tuple(m.faces[f]) for f in exact), "maximum odd face packing")
    moats = moat_cycle_packing(m)
    if moats is not None and len(moats) > best.size:
        best = NuCertificate(tuple(moats), "extremal moat packing (dual)")
    if not verify_cycle_packing(m, best.cycles):  # pragma: no cover
        raise AssertionError("odd cycle packing failed verification")
    return best


# ---------------------------------------------------------------------------
# Bounds and equality
# ---------------------------------------------------------------------------


def _square_root(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class EqualityFlags:
    bound_attained: bool
    face_condition: bool
    order_condition: bool
    aut_condition: bool
    k: int | None

    @property
    def holds(self) -> bool:
        return self.bound_attained and self.face_condition and self.order_condition and self.aut_condition


def _equality(tau: int, n: int, fv: tuple[int, int, int, int], aut: int | None,
              hist: dict[int, int], icosahedral: bool) -> EqualityFlags:
    if icosahedral:
        attained = 5 * tau * tau == 12 * n
        faces = fv[0] == 0 and fv[1] == 0 and fv[2] == 12 and set(hist) <= {5, 6}
        base, order = 60, 120
    else:
        attained = 3 * tau * tau == 4 * n
        faces = set(hist) <= {3, 6}
        base, order = 12, 24
    k = _square_root(n // base) if n % base == 0 else None
    return EqualityFlags(attained, faces, k is not None, aut == order, k)


@dataclass
class AnalysisReport:
    n: int
    edges: int
    face_vector: tuple[int, int, int, int]
    face_histogram: dict[int, int]
    class_report: ClassReport
    tau: int
    transversal: tuple[tuple[int, int], ...]
    maxcut: MaxCut
    alpha: AlphaBounds
    nu: NuCertificate
    aut_order: int | None
    icosahedral: EqualityFlags
    tetrahedral: EqualityFlags
    extras: dict = field(default_factory=dict)

    @property
    def class_ok(self) -> bool:
        return self.class_report.ok

    @property
    def bound_general_sq(self) -> Fraction:
        t, _, p, _ = self.face_vector
        return Fraction((p + 3 * t) * self.n, 5)

    @property
    def bound_12_sq(self) -> Fraction:
        return Fraction(12 * self.n, 5)

    @property
    def bound_no_pentagon_sq(self) -> Fraction | None:
        t, _, p, _ = self.face_vector
        return Fraction(t * self.n, 3) if p == 0 else None

    @property
    def bound_holds(self) -> bool | None:
        if not self.class_ok:
            return None
        t, _, p, _ = self.face_vector
        ok = 5 * self.tau ** 2 <= (p + 3 * t) * self.n <= 12 * self.n
        if p == 0:
            ok = ok and 3 * self.tau ** 2 <= t * self.n
        return ok

    @property
    def equality(self) -> bool:
        return self.class_ok and (self.icosahedral.holds or self.tetrahedral.holds)

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        def eq(f: EqualityFlags) -> dict:
            return {"bound_attained": f.bound_attained, "face_condition": f.face_condition,
                    "order_condition": f.order_condition, "aut_condition": f.aut_condition,
                    "holds": self.class_ok and f.holds, "k": f.k}

        t, _, p, _ = self.face_vector
        return {
            "n": self.n,
            "edges": self.edges,
            "face_vector": list(self.face_vector),
            "face_histogram": {str(k): v for k, v in self.face_histogram.items()},
            "class_ok": self.class_ok,
            "class_failures": self.class_report.failures,
            "tau_odd": self.tau,
            "transversal": [[u + 1, v + 1] for u, v in self.transversal],
            "bound_general_sq": [(p + 3 * t) * self.n, 5],
            "bound_12_sq": [12 * self.n, 5],
            "bound_no_pentagon_sq": [t * self.n, 3] if p == 0 else None,
            "bound_holds": self.bound_holds,
            "aut_order": self.aut_order,
            "equality": {"icosahedral": eq(self.icosahedral), "tetrahedral": eq(self.tetrahedral)},
            "maxcut": self.maxcut.size,
            "bipartition": "".join(map(str, self.maxcut.side)),
            "alpha_lower": [self.alpha.lower.numerator, self.alpha.lower.denominator],
            "alpha_witness": sorted(v + 1 for v in self.alpha.witness),
            "alpha_exact": self.alpha.exact,
            "nu_certificate": self.nu.size,
            "nu_method": self.nu.method,
            "nu_cycles": [[v + 1 for v in c] for c in self.nu.cycles],
        }

    def text_fields(self) -> dict[str, str]:
        t, _, p, _ = self.face_vector
        na = "n/a"

        def sq(num: int, den: int) -> tuple[str, str]:
            return f"{num}/{den}", f"{math.sqrt(num / den):.6f}"

        g_sq, g = sq((p + 3 * t) * self.n, 5)
        b12_sq, b12 = sq(12 * self.n, 5)
        if p == 0:
            np_sq, np_ = sq(t * self.n, 3)
        else:
            np_sq = np_ = na
        cls = "ok" if self.class_ok else "not-applicable (" + ", ".join(self.class_report.failures) + ")"
        bh = self.bound_holds
        ico, tet = self.icosahedral, self.tetrahedral

        def b(x: bool | None) -> str:
            return na if x is None else str(bool(x)).lower()

        out = {
            "n": str(self.n),
            "edges": str(self.edges),
            "face_vector": ",".join(map(str, self.face_vector)),
            "face_histogram": ",".join(f"{k}:{v}" for k, v in self.face_histogram.items()),
            "class": cls,
            "tau_odd": str(self.tau),
            "tau_odd_sq": str(self.tau ** 2),
            "transversal": " ".join(f"{u + 1}-{v + 1}" for u, v in self.transversal),
            "bound_general_sq": g_sq,
            "bound_general": g,
            "bound_12_sq": b12_sq,
            "bound_12": b12,
            "bound_no_pentagon_sq": np_sq,
            "bound_no_pentagon": np_,
            "bound_holds": b(bh),
            "aut_order": na if self.aut_order is None else str(self.aut_order),
            "aut_note": self._aut_note(),
            "equality_icosahedral": b(self.class_ok and ico.holds) if self.class_ok else na,
            "equality_icosahedral_flags": self._flags(ico, "5tau^2=12n", "faces(0,0,12,h)", "n=60k^2", "aut=120"),
            "equality_tetrahedral": b(self.class_ok and tet.holds) if self.class_ok else na,
            "equality_tetrahedral_flags": self._flags(tet, "3tau^2=4n", "faces{3,6}", "n=12k^2", "aut=24"),
            "equality": b(self.equality) if self.class_ok else na,
            "k": str(ico.k if ico.holds else tet.k if tet.holds else na),
            "maxcut": str(self.maxcut.size),
            "maxcut_recount": str(self.maxcut.recount),
            "bipartition": "".join(map(str, self.maxcut.side)),
            "alpha_lower": _frac_str(self.alpha.lower),
            "alpha_witness_size": str(len(self.alpha.witness)),
            "alpha_exact": na if self.alpha.exact is None else str(self.alpha.exact),
            "nu_certificate": str(self.nu.size),
            "nu_method": self.nu.method,
        }
        out.update(self.extras)
        return out

    def _aut_note(self) -> str:
        if self.aut_order == 120:
            return "order 120 consistent with I_h"
        if self.aut_order == 24:
            return "order 24 consistent with T_d"
        return "-"

    @staticmethod
    def _flags(f: EqualityFlags, *names: str) -> str:
        vals = (f.bound_attained, f.face_condition, f.order_condition, f.aut_condition)
        return " ".join(f"{nm}:{str(v).lower()}" for nm, v in zip(names, vals))

    def to_text(self, keys: Sequence[str] | None = None) -> str:
        fields = self.text_fields()
        chosen = keys if keys is not None else list(fields)
        return "".join(f"{k}={fields[k]}\n" for k in chosen)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "AnalysisReport",
    "type": "object",
    "required": ["n", "edges", "face_vector", "face_histogram", "class_ok", "class_failures", "tau_odd",
                 "transversal", "bound_general_sq", "bound_12_sq", "bound_no_pentagon_sq", "bound_holds",
                 "aut_order", "equality", "maxcut", "bipartition", "alpha_lower", "alpha_witness",
                 "alpha_exact", "nu_certificate", "nu_method", "nu_cycles"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {"type": "integer", "minimum": 0},
        "face_vector": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
        "face_histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
        "class_ok": {"type": "boolean"},
        "class_failures": {"type": "array", "items": {"type": "string"}},
        "tau_odd": {"type": "integer", "minimum": 0},
        "transversal": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                                     "minItems": 2, "maxItems": 2}},
        "bound_general_sq": {"$ref": "#/definitions/rational"},
        "bound_12_sq": {"$ref": "#/definitions/rational"},
        "bound_no_pentagon_sq": {"anyOf": [{"$ref": "#/definitions/rational"}, {"type": "null"}]},
        "bound_holds": {"type": ["boolean", "null"]},
        "aut_order": {"type": ["integer", "null"]},
        "equality": {"type": "object", "required": ["icosahedral", "tetrahedral"],
                     "additionalProperties": {"$ref": "#/definitions/flags"}},
        "maxcut": {"type": "integer"},
        "bipartition": {"type": "string", "pattern": "^[01]*$"},
        "alpha_lower": {"$ref": "#/definitions/rational"},
        "alpha_witness": {"type": "array", "items": {"type": "integer"}},
        "alpha_exact": {"type": ["integer", "null"]},
        "nu_certificate": {"type": "integer", "minimum": 0},
        "nu_method": {"type": "string"},
        "nu_cycles": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
    "definitions": {
        "rational": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "flags": {"type": "object",
                  "required": ["bound_attained", "face_condition", "order_condition", "aut_condition",
                               "holds", "k"],
                  "properties": {"k": {"type": ["integer", "null"]}}},
    },
}


def evaluate_bounds(m: CombinatorialMap, exact_alpha: bool = False, budget: int | None = None) -> AnalysisReport:
    cls = validate_class(m)
    r = oct(m)
    aut = automorphism_order(m) if cls.ok else None
    hist = cls.face_histogram
    fv = cls.face_vector
    return AnalysisReport(
        n=m.n,
        edges=len(m.edges),
        face_vector=fv,
        face_histogram=hist,
        class_report=cls,
        tau=r.tau,
        transversal=tuple(m.edges[e] for e in sorted(r.edges)),
        maxcut=maxcut(m, r),
        alpha=alpha_bounds(m, exact_alpha, r, budget),
        nu=nu_certificate(m),
        aut_order=aut,
        icosahedral=_equality(r.tau, m.n, fv, aut, hist, True),
        tetrahedral=_equality(r.tau, m.n, fv, aut, hist, False),
    )
