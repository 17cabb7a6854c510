"""Terminal-preserving isomorphism via colour refinement and individualization.

The canonical form is the lexicographically least edge encoding over all
orderings reachable by individualizing vertices of the first non-singleton
colour cell.  That is exact (not a heuristic) because every leaf ordering of
the search is a genuine vertex ordering and the search is isomorphism-invariant.
"""

from __future__ import annotations

from .graph import DiGraph


def _refine(g: DiGraph, colors: dict) -> dict:
    """Refine until stable.  Colours are small ints whose order is canonical."""
    while True:
        sig = {}
        for v in g.vertices:
            outs = tuple(sorted(colors[e.head] for e in g.out_edges(v)))
            ins = tuple(sorted(colors[e.tail] for e in g.in_edges(v)))
            sig[v] = (colors[v], outs, ins)
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in g.vertices}
        if len(ranks) == len(set(colors.values())):
            return new
        colors = new


def _initial_colors(g: DiGraph) -> dict:
    raw = {
        v: (v != g.source, v != g.target, g.indegree(v), g.outdegree(v))
        for v in g.vertices
    }
    ranks = {s: i for i, s in enumerate(sorted(set(raw.values())))}
    return {v: ranks[raw[v]] for v in g.vertices}


def _encode(g: DiGraph, order: list) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    edges = tuple(sorted((pos[e.tail], pos[e.head]) for e in g.edges))
    return (len(order), pos[g.source], pos[g.target], edges)


def _search(g: DiGraph, colors: dict, best: list):
    cells: dict = {}
    for v, c in colors.items():
        cells.setdefault(c, []).append(v)
    if len(cells) == len(colors):
        order = sorted(colors, key=colors.get)
        code = _encode(g, order)
        if best[0] is None or code < best[0]:
            best[0] = code
            best[1] = order
        return
    target = min(c for c, vs in cells.items() if len(vs) > 1)
    for v in sorted(cells[target]):
        # give v a colour just below its cell, shifting everything else up
        forced = {u: 2 * c + (0 if u == v else 1) for u, c in colors.items()}
        _search(g, _refine(g, forced), best)


def canonical_labeling(g: DiGraph) -> tuple:
    """Return (code, order): a canonical code and the vertex order realizing it."""
    best: list = [None, None]
    _search(g, _refine(g, _initial_colors(g)), best)
    return best[0], best[1]


def canonical_form(g: DiGraph) -> tuple:
    return canonical_labeling(g)[0]


def canonical_graph(g: DiGraph) -> DiGraph:
    """The canonical representative: vertices 0..n-1, edge ids in encoding order."""
    code, _ = canonical_labeling(g)
    n, s, t, edges = code
    return DiGraph.from_edges(edges, s, t, vertices=range(n))


def is_isomorphic(g1: DiGraph, g2: DiGraph):
    """Terminal-preserving isomorphism g1 -> g2 as a dict, or None."""
    if g1.n != g2.n or g1.m != g2.m:
        return None
    c1, o1 = canonical_labeling(g1)
    c2, o2 = canonical_labeling(g2)
    if c1 != c2:
        return None
    return dict(zip(o1, o2))


def edge_map(g1: DiGraph, g2: DiGraph, vmap: dict) -> dict:
    """Pair up edge ids of g1 and g2 under a vertex isomorphism (parallel edges by id order)."""
    pool: dict = {}
    for e in g2.edges:
        pool.setdefault((e.tail, e.head), []).append(e.id)
    result = {}
    for e in g1.edges:
        result[e.id] = pool[(vmap[e.tail], vmap[e.head])].pop(0)
    return result
