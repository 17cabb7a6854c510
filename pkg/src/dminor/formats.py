"""JSON graph files and DOT rendering."""

from __future__ import annotations

import json
import re
import sys

from .errors import GraphError
from .graph import DiGraph


def load_json(path: str):
    """Read JSON from a path, or from stdin when path is '-'."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise GraphError(f"{path}: {exc.strerror}") from None


def load_graph(path: str) -> DiGraph:
    return DiGraph.from_dict(load_json(path))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def dump_json(obj, path: str) -> None:
    text = dumps(obj) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def graph_to_json(g: DiGraph) -> str:
    return dumps(g.to_dict())


def graph_from_json(text: str) -> DiGraph:
    try:
        return DiGraph.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON ({exc})") from None


def export_dot(g: DiGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for v in g.vertices:
        shape = "doublecircle" if v in (g.source, g.target) else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for e in g.edges:
        lines.append(f'  {e.tail} -> {e.head} [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text: str) -> DiGraph:
    """Read back the subset of DOT written by :func:`export_dot`."""
    verts, terms, edges = [], [], []
    for line in text.splitlines():
        m = re.match(r"\s*(\d+) -> (\d+) \[label=\"(\d+)\"\];", line)
        if m:
            edges.append((int(m.group(3)), int(m.group(1)), int(m.group(2))))
            continue
        m = re.match(r"\s*(\d+) \[shape=(\w+)\];", line)
        if m:
            verts.append(int(m.group(1)))
            if m.group(2) == "doublecircle":
                terms.append(int(m.group(1)))
    if not terms:
        raise GraphError("no terminals marked")
    # the source is the double-circled vertex with no in-edges
    heads = {h for _, _, h in edges}
    src = [v for v in terms if v not in heads] or terms
    tgt = [v for v in terms if v != src[0]] or src
    return DiGraph(tuple(verts), tuple(edges), src[0], tgt[0])
