"""Text format for plumbing graphs.

A file holds a ``vertices:`` line with the framings (vertex ids are
implicitly 1..N), an ``edges:`` line of ``(i,j)`` pairs and an optional
``shift:`` line. ``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph_core import IndexOutOfRange, NotATree, PlumbingGraph


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PlumbFile:
    lines: tuple[str, ...]
    graph: PlumbingGraph
    shift: tuple[int, ...] | None = None


_INT = re.compile(r"[+-]?\d+")
_EDGE = re.compile(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_KEYS = ("vertices", "edges", "shift")


def _integers(body: str, start: int, lineno: int) -> list[int]:
    out = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos == len(body):
            return out
        m = _INT.match(body, pos)
        end = m.end() if m else pos
        if not m or (end < len(body) and not body[end].isspace()):
            raise ParseError("expected an integer", lineno, start + pos + 1)
        out.append(int(m.group()))
        pos = end


def _edges(body: str, start: int, lineno: int) -> list[tuple[int, int, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos == len(body):
            return out
        m = _EDGE.match(body, pos)
        if not m:
            raise ParseError("expected an edge '(i,j)'", lineno, start + pos + 1)
        out.append((int(m.group(1)), int(m.group(2)), start + pos + 1))
        pos = m.end()


def parse_file(text: str) -> PlumbFile:
    """Parse the full record, keeping the raw lines and the optional shift."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = tuple(text.replace("\r\n", "\n").split("\n"))
    found: dict[str, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(lines, 1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        colon = content.find(":")
        key = content[:colon].strip() if colon >= 0 else ""
        if key not in _KEYS:
            col = len(content) - len(content.lstrip()) + 1
            raise ParseError("expected 'vertices:', 'edges:' or 'shift:'", lineno, col)
        if key in found:
            raise ParseError(f"repeated '{key}:' line", lineno, content.index(key) + 1)
        if key == "edges" and "vertices" not in found:
            raise ParseError("'edges:' before 'vertices:'", lineno, content.index(key) + 1)
        found[key] = (lineno, colon + 1, content[colon + 1:])
    last = len(lines)
    for key in ("vertices", "edges"):
        if key not in found:
            raise ParseError(f"missing '{key}:' line", last, 1)

    ln, start, body = found["vertices"]
    framings = _integers(body, start, ln)
    if not framings:
        raise ParseError("no framings given", ln, start + 1)
    n = len(framings)

    ln, start, body = found["edges"]
    pairs = []
    for i, j, col in _edges(body, start, ln):
        for v in (i, j):
            if not 1 <= v <= n:
                raise IndexOutOfRange(f"line {ln}, column {col}: vertex {v} not in 1..{n}")
        pairs.append((i, j))
    graph = PlumbingGraph.from_edges(framings, pairs)

    shift = None
    if "shift" in found:
        ln, start, body = found["shift"]
        shift = tuple(_integers(body, start, ln))
        if len(shift) != n:
            raise ParseError(f"shift needs {n} entries, got {len(shift)}", ln, start + 1)
    return PlumbFile(lines, graph, shift)


def parse_plumbing(text: str) -> tuple[PlumbingGraph, tuple[int, ...] | None]:
    f = parse_file(text)
    return f.graph, f.shift


def serialize_plumbing(g: PlumbingGraph, shift=None) -> str:
    out = "vertices: " + " ".join(str(a) for a in g.framings)
    edges = " ".join(f"({i},{j})" for i, j in g.sorted_edges())
    out += "\nedges:" + (" " + edges if edges else "")
    if shift is not None:
        out += "\nshift: " + " ".join(str(int(s)) for s in shift)
    return out


__all__ = ["ParseError", "PlumbFile", "parse_file", "parse_plumbing", "serialize_plumbing",
           "NotATree", "IndexOutOfRange"]
