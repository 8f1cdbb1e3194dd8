"""Graph text formats: JSON, DIMACS-like edge lists, and DOT export."""

from __future__ import annotations

import json

from .graph import Graph


class FormatError(ValueError):
    pass


def graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_obj(obj) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph object: {exc}") from exc
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_obj(g), separators=(",", ":"))


def from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return graph_from_obj(obj)


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    n = None
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or n is not None:
                raise FormatError(f"line {lineno}: malformed problem line")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
        elif parts[0] == "e":
            if n is None or len(parts) != 3:
                raise FormatError(f"line {lineno}: malformed edge line")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
            edges.append((u, v))
        else:
            raise FormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise FormatError("missing 'p edge' header")
    if declared != len(edges):
        raise FormatError(f"header declares {declared} edges, found {len(edges)}")
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if g.m != len(edges):
        raise FormatError("parallel edges are not allowed")
    return g


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if g.labels and g.labels[v]:
            lines.append(f'  {v} [label="{g.labels[v]}"];')
        else:
            lines.append(f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse either format, sniffing JSON by its leading brace."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dimacs(text)


def serialize(g: Graph, fmt: str) -> str:
    if fmt == "json":
        return to_json(g) + "\n"
    if fmt == "dimacs":
        return to_dimacs(g)
    if fmt == "dot":
        return to_dot(g)
    raise FormatError(f"unknown format {fmt!r}")
