"""Readers and writers for map files and certificate text.

* ``planar_code``: the plantri binary format (header ``>>planar_code<<``,
  one byte per entry, 1-indexed neighbours, each rotation closed by ``0``).
* ``rotmap``: plain text, one graph per block. First line ``n``, then one
  line of 1-indexed neighbours per vertex in rotation order. ``#`` starts a
  comment line and a blank line ends a block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .planar_map import CombinatorialMap, MapError

HEADER = b">>planar_code<<"


class FormatError(ValueError):
    """Malformed input; ``offset`` is the byte offset (binary) or line number (text)."""

    def __init__(self, message: str, offset: int | None = None, unit: str = "offset"):
        self.offset = offset
        where = f" at {unit} {offset}" if offset is not None else ""
        super().__init__(message + where)


def parse_planar_code(data: bytes) -> list[CombinatorialMap]:
    if not data.startswith(HEADER):
        raise FormatError("missing >>planar_code<< header", 0)
    maps = []
    i = len(HEADER)
    size = len(data)
    while i < size:
        if data.startswith(HEADER, i):
            # concatenated files repeat the header
            i += len(HEADER)
            continue
        start = i
        n = data[i]
        i += 1
        if n == 0:
            raise FormatError("record with zero vertices", start)
        rot: list[list[int]] = []
        for v in range(n):
            nbrs = []
            while True:
                if i >= size:
                    raise FormatError(f"truncated record (vertex {v + 1} of {n})", i)
                b = data[i]
                i += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(f"neighbour {b} exceeds vertex count {n}", i - 1)
                nbrs.append(b - 1)
            rot.append(nbrs)
        try:
            maps.append(CombinatorialMap(rot))
        except MapError as exc:
            raise FormatError(str(exc), start) from exc
    return maps


def emit_planar_code(maps: Iterable[CombinatorialMap]) -> bytes:
    out = bytearray(HEADER)
    for m in maps:
        if m.n > 255:
            raise FormatError(f"planar_code with 1-byte entries needs n <= 255, got {m.n}")
        out.append(m.n)
        for r in m.rotations:
            out.extend(u + 1 for u in r)
            out.append(0)
    return bytes(out)


def parse_rotmap(text: str) -> list[CombinatorialMap]:
    maps = []
    block: list[tuple[int, str]] = []

    def flush() -> None:
        if not block:
            return
        lineno, first = block[0]
        try:
            n = int(first)
        except ValueError:
            raise FormatError(f"expected vertex count, got {first!r}", lineno, "line") from None
        rows = block[1:]
        if len(rows) != n:
            raise FormatError(f"expected {n} rotation lines, got {len(rows)}", lineno, "line")
        rot = []
        for ln, row in rows:
            try:
                rot.append([int(x) - 1 for x in row.split()])
            except ValueError:
                raise FormatError(f"non-integer neighbour in {row!r}", ln, "line") from None
        try:
            maps.append(CombinatorialMap(rot))
        except MapError as exc:
            raise FormatError(str(exc), lineno, "line") from exc
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        block.append((lineno, line))
    flush()
    return maps


def emit_rotmap(maps: Iterable[CombinatorialMap]) -> str:
    blocks = []
    for m in maps:
        lines = [str(m.n)] + [" ".join(str(u + 1) for u in r) for r in m.rotations]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def parse_maps(data: bytes) -> list[CombinatorialMap]:
    """Auto-detect: planar_code if the header is present, else rotmap text."""
    if data.startswith(HEADER):
        return parse_planar_code(data)
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError("neither planar_code nor ASCII rotmap text", 0) from None
    return parse_rotmap(text)


def read_maps(path: str | Path) -> list[CombinatorialMap]:
    return parse_maps(Path(path).read_bytes())


# ---------------------------------------------------------------------------
# Certificates, patches, moats (1-indexed vertices on disk)
# ---------------------------------------------------------------------------


def _vertex_list(token: str, where: int) -> list[int]:
    try:
        vs = [int(x) - 1 for x in token.split(",") if x]
    except ValueError:
        raise FormatError(f"bad vertex list {token!r}", where, "line") from None
    if not vs or min(vs) < 0:
        raise FormatError(f"bad vertex list {token!r}", where, "line")
    return vs


def _fmt_vertices(vs: Iterable[int]) -> str:
    return ",".join(str(v + 1) for v in sorted(vs))


@dataclass(frozen=True)
class PatchSpec:
    graph: int
    vertices: frozenset[int]
    width: int | None = None


def parse_patches(text: str) -> list[PatchSpec]:
    """Lines ``patch <graph-id> <v1,v2,..>`` or ``moat <graph-id> <v1,..> <w>``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "patch" and len(parts) == 3:
                out.append(PatchSpec(int(parts[1]), frozenset(_vertex_list(parts[2], lineno))))
            elif parts[0] == "moat" and len(parts) == 4:
                out.append(PatchSpec(int(parts[1]), frozenset(_vertex_list(parts[2], lineno)), int(parts[3])))
            else:
                raise FormatError(f"unrecognised line {line!r}", lineno, "line")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad number in {line!r}", lineno, "line") from None
    return out


def format_patch(graph: int, vertices: Iterable[int], width: int | None = None) -> str:
    if width is None:
        return f"patch {graph} {_fmt_vertices(vertices)}"
    return f"moat {graph} {_fmt_vertices(vertices)} {width}"


_CERT_LINE = re.compile(r"^root=([0-9,]+)\s+width=(-?\d+)$")


def parse_certificate(text: str) -> list[tuple[frozenset[int], int]]:
    """Moat packing certificate: one ``root=<v1,v2,...> width=<w>`` per line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _CERT_LINE.match(line)
        if not m:
            raise FormatError(f"malformed certificate line {line!r}", lineno, "line")
        out.append((frozenset(_vertex_list(m.group(1), lineno)), int(m.group(2))))
    return out


def format_certificate(entries: Iterable[tuple[Iterable[int], int]]) -> str:
    return "".join(f"root={_fmt_vertices(r)} width={w}\n" for r, w in entries)


def parse_vertex_set(text: str) -> list[int]:
    """Whitespace- or comma-separated 1-indexed vertices."""
    toks = [t for t in re.split(r"[\s,]+", text) if t and not t.startswith("#")]
    try:
        return [int(t) - 1 for t in toks]
    except ValueError:
        raise FormatError("bad vertex set") from None


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """One ``u v`` pair (1-indexed) per line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {line!r}", lineno, "line")
        try:
            out.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError:
            raise FormatError(f"expected 'u v', got {line!r}", lineno, "line") from None
    return out


def format_edge_list(m: CombinatorialMap, edge_ids: Sequence[int]) -> str:
    return "".join(f"{m.edges[e][0] + 1} {m.edges[e][1] + 1}\n" for e in sorted(edge_ids))
