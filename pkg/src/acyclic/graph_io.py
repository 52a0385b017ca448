"""DIMACS edge format and JSON adjacency-list serialization."""

from __future__ import annotations

import hashlib
import json

from .graph import Graph

SCHEMA = "acyclic-workbench/1"


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    if g.labels is not None:
        lines.extend(f"c label {i + 1} {label}" for i, label in enumerate(g.labels))
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> tuple[Graph, list[str]]:
    """Parse DIMACS; returns the graph and the free-form comment lines.

    Label comments (``c label i text``) written by ``to_dimacs`` are restored.
    """
    n = None
    declared = None
    edges = []
    comments = []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag = line[0]
        if tag == "c":
            body = line[2:] if len(line) > 1 else ""
            if body.startswith("label "):
                _, idx, *rest = body.split(" ", 2)
                labels[int(idx) - 1] = rest[0] if rest else ""
            else:
                comments.append(body)
        elif tag == "p":
            parts = line.split()
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ValueError(f"line {lineno}: malformed problem line {raw!r}")
            n, declared = int(parts[2]), int(parts[3])
        elif tag == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge line {raw!r}")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ValueError(f"line {lineno}: unknown line type {raw!r}")
    if n is None:
        raise ValueError("missing 'p edge n m' line")
    if declared != len(edges):
        raise ValueError(f"header declares {declared} edges, found {len(edges)}")
    label_list = None
    if labels:
        if set(labels) != set(range(n)):
            raise ValueError("labels must cover every vertex")
        label_list = [labels[i] for i in range(n)]
    return Graph.from_edges(n, edges, label_list), comments


def graph_to_dict(g: Graph) -> dict:
    data = {"schema": SCHEMA, "n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        data["labels"] = list(g.labels)
    return data


def graph_from_dict(data: dict) -> Graph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from None
    return Graph.from_edges(n, edges, data.get("labels"))


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":")) + "\n"


def from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dimacs(text)[0]


def graph_hash(g: Graph) -> str:
    """Content hash of the edge set (labels excluded)."""
    h = hashlib.sha256(f"{g.n}:".encode())
    h.update(",".join(f"{u}-{v}" for u, v in g.edges()).encode())
    return h.hexdigest()
