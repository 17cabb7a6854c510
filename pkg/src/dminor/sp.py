"""Directed series-parallel recognition by series and parallel reductions."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DiGraph, Edge, validate_tdag


@dataclass(frozen=True)
class SpDecomposition:
    """Decomposition tree: a leaf holds an edge id, inner nodes compose children in order."""

    kind: str  # "edge", "series" or "parallel"
    edge: int | None = None
    children: tuple = ()

    def leaves(self) -> list:
        if self.kind == "edge":
            return [self.edge]
        return [e for c in self.children for e in c.leaves()]

    def recompose(self) -> DiGraph:
        """Build the graph described by the tree (vertex ids are fresh)."""
        counter = [0]

        def fresh():
            counter[0] += 1
            return counter[0] - 1

        def build(node, s, t):
            if node.kind == "edge":
                return [Edge(node.edge, s, t)]
            if node.kind == "parallel":
                return [e for c in node.children for e in build(c, s, t)]
            out = []
            cur = s
            for i, c in enumerate(node.children):
                nxt = t if i == len(node.children) - 1 else fresh()
                out.extend(build(c, cur, nxt))
                cur = nxt
            return out

        s, t = fresh(), fresh()
        edges = build(self, s, t)
        return DiGraph(tuple(range(counter[0])), tuple(edges), s, t)

    def to_dict(self) -> dict:
        if self.kind == "edge":
            return {"edge": self.edge}
        return {self.kind: [c.to_dict() for c in self.children]}


def _combine(kind: str, parts) -> SpDecomposition:
    children = []
    for p in parts:
        if p.kind == kind:
            children.extend(p.children)
        else:
            children.append(p)
    return SpDecomposition(kind, children=tuple(children))


def is_series_parallel(g: DiGraph):
    """SpDecomposition when g reduces to one source-target edge, else None."""
    g = validate_tdag(g)
    if g.m == 0:
        return None
    # live edges: key -> (tail, head, tree)
    live = {e.id: (e.tail, e.head, SpDecomposition("edge", e.id)) for e in g.edges}
    outs = {v: set() for v in g.vertices}
    ins = {v: set() for v in g.vertices}
    for k, (a, b, _) in live.items():
        outs[a].add(k)
        ins[b].add(k)
    next_key = max(live) + 1
    changed = True
    while changed:
        changed = False
        # parallel reductions
        for v in sorted(outs):
            by_head: dict = {}
            for k in sorted(outs[v]):
                by_head.setdefault(live[k][1], []).append(k)
            for head, ks in by_head.items():
                if len(ks) < 2:
                    continue
                tree = _combine("parallel", [live[k][2] for k in ks])
                for k in ks:
                    del live[k]
                    outs[v].discard(k)
                    ins[head].discard(k)
                live[next_key] = (v, head, tree)
                outs[v].add(next_key)
                ins[head].add(next_key)
                next_key += 1
                changed = True
        # series reductions
        for v in sorted(outs):
            if v in (g.source, g.target) or len(ins[v]) != 1 or len(outs[v]) != 1:
                continue
            (k1,), (k2,) = tuple(ins[v]), tuple(outs[v])
            a, _, t1 = live.pop(k1)
            _, b, t2 = live.pop(k2)
            outs[a].discard(k1)
            ins[b].discard(k2)
            del outs[v], ins[v]
            live[next_key] = (a, b, _combine("series", [t1, t2]))
            outs[a].add(next_key)
            ins[b].add(next_key)
            next_key += 1
            changed = True
            break
    if len(live) == 1:
        (a, b, tree), = live.values()
        if (a, b) == (g.source, g.target):
            return tree
    return None
