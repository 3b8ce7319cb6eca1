"""Edge-list files and run reports.

Edge-list format, one entry per line::

    # comment
    u v          simple edge between ids u and v
    loop u k     k self-loops at u

Ids are nonnegative decimals and need not be contiguous; they are compacted
to ``0..n-1`` in increasing order on load and mapped back in reports.

Reports are JSON objects with sorted keys. Fractions are written as
``"a/b"`` strings so that every guarantee can be rechecked exactly.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .graph import Graph, GraphError, build_graph

REPORT_VERSION = 1


class EdgeListError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


@dataclass(frozen=True, eq=False)
class LoadedGraph:
    graph: Graph
    # original_ids[i] is the file id of compact vertex i.
    original_ids: tuple[int, ...]

    def to_compact(self, ids) -> list[int]:
        lookup = {orig: i for i, orig in enumerate(self.original_ids)}
        out = []
        for u in ids:
            if int(u) not in lookup:
                raise GraphError(f"vertex {u} does not occur in the input")
            out.append(lookup[int(u)])
        return out

    def to_original(self, ids) -> list[int]:
        return [self.original_ids[int(u)] for u in ids]


def _parse_id(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise EdgeListError(lineno, f"expected a nonnegative integer id, got {token!r}")
    return int(token)


def parse_edge_list(text: str) -> LoadedGraph:
    edges: list[tuple[int, int, int]] = []
    loops: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "loop":
            if len(parts) != 3:
                raise EdgeListError(lineno, "expected 'loop u k'")
            loops.append((_parse_id(parts[1], lineno), _parse_id(parts[2], lineno), lineno))
            continue
        if len(parts) != 2:
            raise EdgeListError(lineno, "expected 'u v' or 'loop u k'")
        u, v = _parse_id(parts[0], lineno), _parse_id(parts[1], lineno)
        if u == v:
            raise EdgeListError(lineno, f"self-edge {u} {v}; write 'loop {u} 1' instead")
        edges.append((u, v, lineno))

    ids = sorted({x for u, v, _ in edges for x in (u, v)} | {u for u, _, _ in loops})
    index = {orig: i for i, orig in enumerate(ids)}
    seen: dict[tuple[int, int], int] = {}
    for u, v, lineno in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(lineno, f"duplicate edge {u} {v} (first on line {seen[key]})")
        seen[key] = lineno
    try:
        g = build_graph([(index[u], index[v]) for u, v, _ in edges],
                        [(index[u], k) for u, k, _ in loops], vertex_count=len(ids))
    except GraphError as exc:
        raise EdgeListError(0, str(exc)) from exc
    return LoadedGraph(g, tuple(ids))


def format_edge_list(g: Graph, original_ids: Optional[tuple[int, ...]] = None,
                     header: str = "") -> str:
    """Serialize ``g``; parsing the result yields the same graph."""
    name = (lambda u: original_ids[u]) if original_ids else (lambda u: u)
    lines = [f"# {line}" for line in header.splitlines()]
    for u, v in g.edges():
        lines.append(f"{name(u)} {name(v)}")
    for u in range(g.vertex_count):
        if g.self_loops[u]:
            lines.append(f"loop {name(u)} {int(g.self_loops[u])}")
    return "\n".join(lines) + "\n"


def graph_digest(g: Graph, original_ids: Optional[tuple[int, ...]] = None) -> str:
    """SHA-256 of the canonical edge list, independent of input formatting."""
    return hashlib.sha256(format_edge_list(g, original_ids).encode()).hexdigest()


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def dump_report(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_report(text: str) -> dict[str, Any]:
    data = json.loads(text)
    if data.get("version") != REPORT_VERSION:
        raise ValueError(f"unsupported report version {data.get('version')!r}")
    return data
