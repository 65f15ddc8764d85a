"""Command line front end: ``oddplanar gen|oct|maxcut|alpha|bounds|stats|verify``.

Exit codes: 0 success, 1 validation failure, 2 input/output or format error.
Input files are planar_code when they start with ``>>planar_code<<`` and
rotmap text otherwise; ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from . import formats
from .analysis import AnalysisReport, alpha_bounds, automorphism_order, evaluate_bounds, maxcut, oct
from .curvature import Triangulation, moat_identities_check
from .formats import FormatError
from .generators import disc, family57, gc_fullerene, goldberg_coxeter, platonic
from .independence import BudgetExceeded
from .planar_map import CombinatorialMap, MapError, dual, validate_class
from .tjoin import MoatPackingCertificate, NotExtremal, extremal_packing, parity_violations, verify_moat_packing

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class CLIError(Exception):
    def __init__(self, message: str, code: int = EXIT_IO):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read_bytes(path: str) -> bytes:
    try:
        return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None


def _read_text(path: str) -> str:
    try:
        return _read_bytes(path).decode("ascii")
    except UnicodeDecodeError:
        raise CLIError(f"{path}: not ASCII text") from None


def _load_maps(path: str) -> list[CombinatorialMap]:
    try:
        maps = formats.parse_maps(_read_bytes(path))
    except FormatError as exc:
        raise CLIError(f"{path}: {exc}") from None
    if not maps:
        raise CLIError(f"{path}: no graphs")
    return maps


def _write_output(data: bytes | str, out: str | None) -> None:
    raw = data.encode("ascii") if isinstance(data, str) else data
    if out is None or out == "-":
        sys.stdout.buffer.write(raw)
        sys.stdout.buffer.flush()
        return
    try:
        Path(out).write_bytes(raw)
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc.strerror}") from None


def _encode(maps: Sequence[CombinatorialMap], text: bool) -> bytes | str:
    if text:
        return formats.emit_rotmap(maps)
    try:
        return formats.emit_planar_code(maps)
    except FormatError as exc:
        raise CLIError(f"{exc}; use --text for rotmap output") from None


def _as_triangulation(m: CombinatorialMap) -> tuple[Triangulation, bool]:
    """The map itself if every face is a triangle, else its dual."""
    if all(len(f) == 3 for f in m.faces):
        return Triangulation(m.rotations), False
    try:
        return Triangulation(dual(m)[0].rotations), True
    except MapError as exc:
        raise CLIError(f"neither a triangulation nor the dual of one: {exc}", EXIT_INVALID) from None


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    try:
        if kind == "gc":
            m: CombinatorialMap = (gc_fullerene(args.i, args.j, args.seed) if args.dual
                                   else goldberg_coxeter(args.seed, args.i, args.j))
        elif kind == "family57":
            m = family57(args.k).graph
        elif kind == "platonic":
            m = platonic(args.name)
        elif kind == "disc":
            if args.c not in (1, 2, 3):
                raise CLIError(f"D_r({args.c}) has centre degree {6 - args.c} < 3 and no host "
                               "triangulation; only c in 1..3 can be written")
            d = disc(args.c, args.r)
            m = d.host
            if args.patch:
                _write_output(formats.format_patch(1, d.patch.vertices) + "\n", args.patch)
        else:  # pragma: no cover - argparse restricts choices
            raise CLIError(f"unknown generator {kind}")
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    _write_output(_encode([m], args.text), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analysis subcommands
# ---------------------------------------------------------------------------


KEYS = {
    "oct": ["n", "tau_odd", "transversal", "bound_general_sq", "bound_general", "bound_holds", "equality"],
    "maxcut": ["n", "tau_odd", "maxcut", "maxcut_recount", "bipartition"],
    "alpha": ["n", "tau_odd", "alpha_lower", "alpha_witness_size", "alpha_exact"],
    "stats": ["n", "edges", "face_vector", "face_histogram", "class", "aut_order"],
}


def _fields_for(command: str, m: CombinatorialMap, exact: bool) -> tuple[dict[str, str], dict, int, dict]:
    """Text fields, JSON record, exit status and certificate texts for one graph."""
    status = EXIT_OK
    certs: dict[str, str] = {}
    if command in ("bounds", "oct"):
        try:
            rep = evaluate_bounds(m, exact_alpha=exact)
        except BudgetExceeded:
            rep = evaluate_bounds(m)
            rep.extras["alpha_exact"] = "budget-exceeded"
            status = EXIT_INVALID
        if not rep.class_ok and command == "bounds":
            status = EXIT_INVALID
        fields = rep.text_fields()
        record = rep.to_dict()
        certs = _report_certificates(m, rep)
        if command == "oct":
            record = {k: record[k] for k in ("n", "tau_odd", "transversal", "bound_general_sq", "bound_holds",
                                             "equality")}
            certs = {"transversal": certs["transversal"]}
        return fields, record, status, certs
    fields: dict[str, str] = {"n": str(m.n)}
    record: dict = {"n": m.n}
    if command == "stats":
        cls = validate_class(m)
        aut = automorphism_order(m) if cls.ok else None
        fields.update({
            "edges": str(len(m.edges)),
            "face_vector": ",".join(map(str, cls.face_vector)),
            "face_histogram": ",".join(f"{k}:{v}" for k, v in cls.face_histogram.items()),
            "class": "ok" if cls.ok else "not-applicable (" + ", ".join(cls.failures) + ")",
            "aut_order": "n/a" if aut is None else str(aut),
        })
        record.update({"edges": len(m.edges), "face_vector": list(cls.face_vector),
                       "face_histogram": {str(k): v for k, v in cls.face_histogram.items()},
                       "class_ok": cls.ok, "class_failures": cls.failures, "aut_order": aut})
        return fields, record, status, certs
    r = oct(m)
    fields["tau_odd"] = str(r.tau)
    record["tau_odd"] = r.tau
    edges = sorted(m.edges[e] for e in r.edges)
    certs["transversal"] = "".join(f"{u + 1} {v + 1}\n" for u, v in edges)
    if command == "maxcut":
        mc = maxcut(m, r)
        side = "".join(map(str, mc.side))
        fields.update({"maxcut": str(mc.size), "maxcut_recount": str(mc.recount), "bipartition": side})
        record.update({"maxcut": mc.size, "bipartition": side})
        certs["bipartition"] = side + "\n"
    elif command == "alpha":
        try:
            ab = alpha_bounds(m, exact, r)
            exact_str = "n/a" if ab.exact is None else str(ab.exact)
        except BudgetExceeded:
            ab = alpha_bounds(m, False, r)
            exact_str = "budget-exceeded"
            status = EXIT_INVALID
        low = ab.lower
        fields.update({"alpha_lower": str(low.numerator) if low.denominator == 1 else f"{low.numerator}/{low.denominator}",
                       "alpha_witness_size": str(len(ab.witness)), "alpha_exact": exact_str})
        record.update({"alpha_lower": [low.numerator, low.denominator], "alpha_witness": sorted(v + 1 for v in ab.witness),
                       "alpha_exact": ab.exact})
        certs["independent"] = "".join(f"{v + 1}\n" for v in sorted(ab.exact_set or ab.witness))
    return fields, record, status, certs


def _report_certificates(m: CombinatorialMap, rep: AnalysisReport) -> dict[str, str]:
    certs = {
        "transversal": "".join(f"{u + 1} {v + 1}\n" for u, v in rep.transversal),
        "bipartition": "".join(map(str, rep.maxcut.side)) + "\n",
        "packing": "".join(" ".join(str(v + 1) for v in c) + "\n" for c in rep.nu.cycles),
    }
    try:
        tri = Triangulation(dual(m)[0].rotations)
        cert = extremal_packing(tri)
        certs["moats"] = formats.format_certificate(cert.entries)
    except (NotExtremal, ValueError):
        pass
    return certs


def _analyze_one(job: tuple[str, CombinatorialMap, bool]):
    command, m, exact = job
    return _fields_for(command, m, exact)


def cmd_analyze(args: argparse.Namespace) -> int:
    maps = _load_maps(args.file)
    jobs = [(args.command, m, args.exact) for m in maps]
    if args.jobs > 1 and len(maps) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_one, jobs))
    else:
        results = [_analyze_one(j) for j in jobs]
    keys = KEYS.get(args.command)
    out = []
    status = EXIT_OK
    records = []
    for gid, (fields, record, st, certs) in enumerate(results, start=1):
        status = max(status, st)
        chosen = keys if keys is not None else list(fields)
        # blocks end with a blank line so a batch equals the concatenated single runs
        out.append("".join(f"{k}={fields[k]}\n" for k in chosen) + "\n")
        records.append({"graph": gid, **record})
        if args.certificates:
            d = Path(args.certificates)
            try:
                d.mkdir(parents=True, exist_ok=True)
                for name, text in certs.items():
                    (d / f"graph{gid}.{name}").write_text(text)
            except OSError as exc:
                raise CLIError(f"cannot write certificates to {d}: {exc.strerror}") from None
    _write_output("".join(out), None)
    if args.json:
        _write_output(json.dumps(records, indent=2, sort_keys=True) + "\n", args.json)
    return status


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _pick_graph(maps: Sequence[CombinatorialMap], gid: int, path: str) -> CombinatorialMap:
    if not 1 <= gid <= len(maps):
        raise CLIError(f"{path}: no graph {gid} (file has {len(maps)})")
    return maps[gid - 1]


def _check_vertices(vs, n: int, what: str) -> None:
    bad = [v for v in vs if not 0 <= v < n]
    if bad:
        raise CLIError(f"{what}: vertex {bad[0] + 1} out of range 1..{n}")


def cmd_verify_packing(args: argparse.Namespace) -> int:
    maps = _load_maps(args.graph)
    tri, dualised = _as_triangulation(_pick_graph(maps, args.graph_id, args.graph))
    try:
        entries = formats.parse_certificate(_read_text(args.cert))
    except FormatError as exc:
        raise CLIError(f"{args.cert}: {exc}") from None
    for root, w in entries:
        _check_vertices(root, tri.n, args.cert)
        if w < 1:
            raise CLIError(f"{args.cert}: width {w} < 1")
    verdict = verify_moat_packing(tri, MoatPackingCertificate.from_pairs(entries))
    lines = []
    if dualised:
        lines.append("graph=dual (vertex i is face i of the input map)")
    lines += verdict.lines()
    lines.append(f"total_width={verdict.total_width}")
    lines.append(f"result={'pass' if verdict.valid else 'fail'}")
    _write_output("\n".join(lines) + "\n", None)
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_verify_tjoin(args: argparse.Namespace) -> int:
    m = _pick_graph(_load_maps(args.graph), args.graph_id, args.graph)
    try:
        T = formats.parse_vertex_set(_read_text(args.tset))
        pairs = formats.parse_edge_list(_read_text(args.join))
    except FormatError as exc:
        raise CLIError(str(exc)) from None
    _check_vertices(T, m.n, args.tset)
    ids = []
    for u, v in pairs:
        _check_vertices((u, v), m.n, args.join)
        if not m.has_edge(u, v):
            raise CLIError(f"{args.join}: {u + 1}-{v + 1} is not an edge")
        ids.append(m.edge_id(u, v))
    if len(set(ids)) != len(ids):
        raise CLIError(f"{args.join}: repeated edge")
    bad = parity_violations(m, set(T), ids)
    lines = [f"parity fail at vertex {v + 1}" for v in bad]
    lines.append(f"join_size={len(ids)}")
    lines.append(f"parity={'pass' if not bad else 'fail'}")
    _write_output("\n".join(lines) + "\n", None)
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_verify_identities(args: argparse.Namespace) -> int:
    maps = _load_maps(args.graph)
    try:
        specs = formats.parse_patches(_read_text(args.patch))
    except FormatError as exc:
        raise CLIError(f"{args.patch}: {exc}") from None
    if not specs:
        raise CLIError(f"{args.patch}: no patches")
    if args.width < 0:
        raise CLIError("width must be non-negative")
    status = EXIT_OK
    blocks = []
    for spec in specs:
        tri, _ = _as_triangulation(_pick_graph(maps, spec.graph, args.graph))
        _check_vertices(spec.vertices, tri.n, args.patch)
        w = spec.width if spec.width is not None else args.width
        rep = moat_identities_check(tri, spec.vertices, w)

        def tf(x) -> str:
            return "n/a" if x is None else ("pass" if x else "fail")

        lines = [f"patch={formats.format_patch(spec.graph, spec.vertices)}", f"width={w}",
                 f"curvature={rep.curvature}", f"base_area={rep.base_area}", f"boundary={rep.boundary_length}"]
        if not rep.precondition:
            lines.append(f"precondition=fail ({rep.precondition_failure})")
        else:
            lines += [
                "precondition=pass",
                f"moat_area={rep.moat_area}",
                f"first_band_area={rep.first_band_area if rep.first_band_area is not None else 'n/a'}",
                f"band_identity={tf(rep.band_identity)}",
                f"area_identity={tf(rep.area_identity)}",
                f"isoperimetric={tf(rep.isoperimetric_bound)}",
            ]
        lines.append(f"result={'pass' if rep.passed else 'fail'}")
        if not rep.passed:
            status = EXIT_INVALID
        blocks.append("\n".join(lines) + "\n")
    _write_output("\n".join(blocks), None)
    return status


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddplanar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate maps")
    gsub = gen.add_subparsers(dest="kind", required=True)

    def out_opts(q: argparse.ArgumentParser) -> None:
        q.add_argument("-o", "--output", help="output file (default standard output)")
        q.add_argument("--text", action="store_true", help="write rotmap text instead of planar_code")

    g = gsub.add_parser("gc", help="Goldberg-Coxeter triangulation GC(i,j) or its dual")
    g.add_argument("--seed", choices=["icosa", "tetra"], required=True)
    g.add_argument("--i", type=int, required=True)
    g.add_argument("--j", type=int, required=True)
    g.add_argument("--dual", action="store_true", help="emit the cubic dual")
    out_opts(g)
    g = gsub.add_parser("family57", help="cubic maps with faces of size 5 and 7")
    g.add_argument("--k", type=int, required=True)
    out_opts(g)
    g = gsub.add_parser("disc", help="sphere triangulation containing the disc D_r(c)")
    g.add_argument("--c", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--patch", help="also write the disc's vertex set as a patch file")
    out_opts(g)
    g = gsub.add_parser("platonic", help="tetrahedron, icosahedron or dodecahedron")
    g.add_argument("name", choices=["tetrahedron", "icosahedron", "dodecahedron"])
    out_opts(g)
    gen.set_defaults(func=cmd_gen)

    for name, text in [("oct", "minimum odd cycle transversal"), ("maxcut", "maximum cut"),
                       ("alpha", "independence number bounds"), ("bounds", "full bound report"),
                       ("stats", "face statistics and class check")]:
        a = sub.add_parser(name, help=text)
        a.add_argument("file", help="planar_code or rotmap file, '-' for standard input")
        a.add_argument("--exact", action="store_true", help="exact independence number (n <= 120)")
        a.add_argument("--certificates", metavar="DIR", help="write certificate files to DIR")
        a.add_argument("--json", metavar="FILE", help="also write the reports as JSON")
        a.add_argument("--jobs", type=int, default=1, help="analyse graphs in parallel")
        a.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", help="check certificates")
    vsub = ver.add_subparsers(dest="what", required=True)
    v = vsub.add_parser("packing", help="moat packing certificate (M1-M6)")
    v.add_argument("graph")
    v.add_argument("cert")
    v.add_argument("--graph-id", type=int, default=1)
    v.set_defaults(func=cmd_verify_packing)
    v = vsub.add_parser("tjoin", help="T-join parity")
    v.add_argument("graph")
    v.add_argument("tset")
    v.add_argument("join")
    v.add_argument("--graph-id", type=int, default=1)
    v.set_defaults(func=cmd_verify_tjoin)
    v = vsub.add_parser("identities", help="moat area identities on a patch")
    v.add_argument("graph")
    v.add_argument("patch")
    v.add_argument("width", type=int)
    v.set_defaults(func=cmd_verify_identities)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("oddplanar: --jobs must be >= 1", file=sys.stderr)
        return EXIT_IO
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except CLIError as exc:
        print(f"oddplanar: {exc}", file=sys.stderr)
        return exc.code
    except (MapError, FormatError) as exc:
        print(f"oddplanar: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"oddplanar: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
