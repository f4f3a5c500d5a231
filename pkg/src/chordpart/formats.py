"""Graph serialization: graph6, DOT and a JSON form carrying labels.

graph6 follows the format description shipped with nauty (``formats.txt``):
the vertex count ``N(n)`` followed by the upper triangle of the adjacency
matrix in column order, packed six bits per printable byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .graph import Graph, make_graph

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"graph6 cannot encode n={n}")


def to_graph6(G: Graph) -> str:
    out = bytearray(_encode_n(G.n))
    acc = 0
    nbits = 0
    for j in range(1, G.n):
        row = G.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str | bytes) -> Graph:
    """Parse one graph6 line (optional ``>>graph6<<`` header, trailing newline allowed).

    Raises:
        ParseError: with the byte offset of the first offending byte.
    """
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    pos = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        pos = len(GRAPH6_HEADER)
    end = len(data)
    while end > pos and data[end - 1] in b"\r\n":
        end -= 1
    if data[pos:end].startswith(b":") or data[pos:end].startswith(b"&"):
        raise ParseError("sparse6/digraph6 input is not graph6", pos)
    for off in range(pos, end):
        if not 63 <= data[off] <= 126:
            raise ParseError(f"byte {data[off]!r} outside graph6 range 63..126", off)
    if pos >= end:
        raise ParseError("empty graph6 string", pos)

    def take(k: int, at: int) -> int:
        if at + k > end:
            raise ParseError("truncated vertex count", end)
        v = 0
        for b in data[at : at + k]:
            v = (v << 6) | (b - 63)
        return v

    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < end and data[pos + 1] == 126:
        n, pos = take(6, pos + 2), pos + 8
    else:
        n, pos = take(3, pos + 1), pos + 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if end - pos != need:
        at = pos + min(need, end - pos)
        raise ParseError(f"expected {need} adjacency bytes for n={n}, found {end - pos}", at)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6:
        last = data[end - 1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise ParseError("non-zero padding bits", end - 1)
    return make_graph(n, edges)


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        if G.labels is not None:
            lines.append(f'  {v} [label="{G.labels[v]}"];')
        else:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in G.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(G: Graph) -> dict:
    return {
        "n": G.n,
        "edges": [list(e) for e in G.edges],
        "labels": list(G.labels) if G.labels is not None else None,
    }


def graph_from_dict(data: dict) -> Graph:
    try:
        n = data["n"]
        edges = [tuple(e) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"graph JSON missing field: {exc}", 0) from exc
    if any(len(e) != 2 for e in edges):
        raise ParseError("graph JSON edge is not a pair", 0)
    return make_graph(n, edges, data.get("labels"))


def to_json(G: Graph) -> str:
    return json.dumps(graph_to_dict(G), sort_keys=True) + "\n"


def from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    return graph_from_dict(data)


def read_graph(path: str | Path) -> Graph:
    """Read a graph file, picking the format from the suffix (``.json`` or graph6)."""
    path = Path(path)
    if path.suffix == ".json":
        return from_json(path.read_text(encoding="utf-8"))
    if path.suffix == ".dot":
        raise ParseError("DOT is write-only; use graph6 or JSON", 0)
    return from_graph6(path.read_bytes().split(b"\n", 1)[0])


def write_graph(G: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or {".json": "json", ".dot": "dot"}.get(path.suffix, "graph6")
    if fmt == "json":
        path.write_text(to_json(G), encoding="utf-8")
    elif fmt == "dot":
        path.write_text(to_dot(G), encoding="utf-8")
    elif fmt == "graph6":
        path.write_text(to_graph6(G) + "\n", encoding="ascii")
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
