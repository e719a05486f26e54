"""Text and JSON file formats for graphs and matrices.

Digraph text::

    n m
    u v [weight]      # m lines; weight is an integer, x, or a JSON coefficient list

Undirected text::

    n m
    u v               # ports are assigned in input order

Either kind may instead be a JSON object ``{"n": .., "arcs": [[u, v, w], ..]}``
or ``{"n": .., "edges": [[u, v], ..]}``. Dense matrices are ``n`` followed by
``n`` rows of integers. Lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .graphs import GraphError, UndirectedGraph, WeightedDigraph
from .poly import UniPoly, Weight

PathLike = Union[str, Path]


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_weight(token: str) -> Weight:
    token = token.strip()
    if token == "x":
        return UniPoly.x()
    if token.startswith("["):
        coeffs = json.loads(token)
        if not all(isinstance(c, int) for c in coeffs):
            raise GraphError(f"bad coefficient list {token!r}")
        return UniPoly(coeffs)
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"bad arc weight {token!r}") from None


def weight_to_json(w: Weight):
    if isinstance(w, UniPoly):
        return list(w.coeffs)
    return w


def weight_from_json(value) -> Weight:
    if isinstance(value, list):
        return UniPoly(value)
    if value == "x":
        return UniPoly.x()
    if isinstance(value, int):
        return value
    raise GraphError(f"bad arc weight {value!r}")


def _format_weight(w: Weight) -> str:
    if isinstance(w, UniPoly):
        if w == UniPoly.x():
            return "x"
        return json.dumps(list(w.coeffs), separators=(",", ":"))
    return str(w)


def _header(lines: list[str], what: str) -> tuple[int, int]:
    if not lines:
        raise GraphError(f"empty {what} file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"{what} header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"header announces {m} lines, found {len(lines) - 1}")
    return n, m


# ---------------------------------------------------------------- digraphs

def digraph_from_text(text: str) -> WeightedDigraph:
    if text.lstrip().startswith("{"):
        return digraph_from_json(json.loads(text))
    lines = _lines(text)
    n, _ = _header(lines, "digraph")
    g = WeightedDigraph(n)
    for line in lines[1:]:
        parts = line.split(None, 2)
        if len(parts) < 2:
            raise GraphError(f"bad arc line {line!r}")
        w = parse_weight(parts[2]) if len(parts) == 3 else 1
        g.add_arc(int(parts[0]), int(parts[1]), w)
    return g


def digraph_to_text(g: WeightedDigraph) -> str:
    out = [f"{g.n} {len(g.arcs)}"]
    for (u, v), w in sorted(g.arcs.items()):
        out.append(f"{u} {v}" if w == 1 else f"{u} {v} {_format_weight(w)}")
    return "\n".join(out) + "\n"


def digraph_from_json(data: dict) -> WeightedDigraph:
    g = WeightedDigraph(data["n"], data.get("labels"))
    for arc in data["arcs"]:
        u, v = arc[0], arc[1]
        g.add_arc(u, v, weight_from_json(arc[2]) if len(arc) > 2 else 1)
    return g


def digraph_to_json(g: WeightedDigraph) -> dict:
    return {
        "n": g.n,
        "arcs": [[u, v, weight_to_json(w)] for (u, v), w in sorted(g.arcs.items())],
        "labels": list(g.labels),
    }


def read_digraph(path: PathLike) -> WeightedDigraph:
    g = digraph_from_text(Path(path).read_text())
    side = sidecar_path(path)
    if side.exists():
        data = json.loads(side.read_text())
        labels = data.get("labels")
        if labels is not None and len(labels) == g.n:
            g.labels = list(labels)
        g.meta = data.get("meta", {})
    return g


def sidecar_path(path: PathLike) -> Path:
    return Path(str(path) + ".labels.json")


def write_digraph(g: WeightedDigraph, path: PathLike, sidecar: bool = True) -> None:
    Path(path).write_text(digraph_to_text(g))
    if sidecar:
        sidecar_path(path).write_text(
            json.dumps({"labels": g.labels, "meta": g.meta}, indent=1, sort_keys=True) + "\n")


# ---------------------------------------------------------------- undirected

def undirected_from_text(text: str) -> UndirectedGraph:
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        return UndirectedGraph(data["n"], [tuple(e) for e in data["edges"]])
    lines = _lines(text)
    n, _ = _header(lines, "graph")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return UndirectedGraph(n, edges)


def undirected_to_text(h: UndirectedGraph) -> str:
    return "\n".join([f"{h.n} {len(h.edges)}"] + [f"{u} {v}" for u, v in h.edges]) + "\n"


def read_undirected(path: PathLike) -> UndirectedGraph:
    return undirected_from_text(Path(path).read_text())


# ---------------------------------------------------------------- matrices

def matrix_from_text(text: str) -> list[list[Weight]]:
    if text.lstrip().startswith("["):
        rows = json.loads(text)
        return [[weight_from_json(v) for v in row] for row in rows]
    lines = _lines(text)
    if not lines:
        raise ValueError("empty matrix file")
    n = int(lines[0])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    rows = [[parse_weight(tok) for tok in line.split()] for line in lines[1:]]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    return rows


def read_matrix(path: PathLike) -> list[list[Weight]]:
    return matrix_from_text(Path(path).read_text())
