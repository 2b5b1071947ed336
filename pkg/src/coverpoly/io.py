"""Text and JSON formats: edge lists, decompositions, orders, ideals."""

from __future__ import annotations

import json
from pathlib import Path

from coverpoly.errors import InputError
from coverpoly.graph import Graph
from coverpoly.monomial import Monomial, VariableOrder
from coverpoly.structure import Decomposition


def parse_graph(text: str) -> Graph:
    """Edge list: one ``u v`` per line, ``vertex u`` for isolated vertices,
    ``#`` comments and blank lines ignored."""
    edges = []
    extra = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            extra.append(parts[1])
        elif len(parts) == 2:
            edges.append((parts[0], parts[1]))
        else:
            raise InputError(f"line {lineno}: expected 'u v' or 'vertex u', got {raw!r}")
    return Graph.from_edges(edges, vertices=extra)


def format_graph(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.sorted_edges()]
    lines += [f"vertex {v}" for v in g.vertices if not g.adjacency[v]]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    try:
        return parse_graph(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc


def read_decomposition(path: str | Path) -> Decomposition:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read decomposition {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("decomposition JSON must be an object")
    return Decomposition.from_json(data)


def parse_order(text: str) -> VariableOrder:
    """Whitespace-separated labels, greatest variable first; '#' comments."""
    labels = []
    for raw in text.splitlines():
        labels += raw.split("#", 1)[0].split()
    if not labels:
        raise InputError("empty variable order")
    return VariableOrder(labels)


def read_order(path: str | Path) -> VariableOrder:
    try:
        return parse_order(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read order file {path}: {exc}") from exc


def parse_ideal(data: dict) -> list[Monomial]:
    try:
        return [Monomial.parse(s) for s in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed ideal JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
