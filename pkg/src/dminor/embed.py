"""Pattern tests: hubs, split expansions, h-embedding, d-embedding and d-minors.

A pattern P is d-embedded in a TDAG host H exactly when some expansion of P
(a graph reachable from P by vertex splits alone) is h-embedded in H.  The
h-embedding test is terminal-anchored subgraph homeomorphism: an injective
vertex map plus internally disjoint host paths, one per pattern edge, and
host paths from the host source to the image of the pattern source and from
the image of the pattern target to the host target.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .disjoint import port_split_paths
from .errors import CycleFound, GraphError, HostNotTwoTerminal
from .graph import DiGraph, Path, reachable_from, topological_order, validate_tdag
from .iso import canonical_form
from .ops import (
    BackwardContract,
    BackwardSplit,
    Delete,
    ForwardContract,
    ForwardSplit,
    OpSequence,
    apply_embed_op,
    resolve,
)


@dataclass(frozen=True)
class Hub:
    vertex: int
    indegree: int
    outdegree: int


def hubs(g: DiGraph) -> list:
    return [
        Hub(v, g.indegree(v), g.outdegree(v))
        for v in g.vertices
        if g.indegree(v) > 1 and g.outdegree(v) > 1
    ]


# -- expansions -------------------------------------------------------------------------


@dataclass(frozen=True)
class Expansion:
    graph: DiGraph
    provenance: tuple  # split ops taking the pattern to ``graph``, ids resolved


def _split_moves(g: DiGraph):
    """Splits that are not equivalent to a subdivision or a terminal extension.

    Moving a single edge is a subdivision of that edge.  Moving every out-edge
    of a vertex with at most one in-edge subdivides its in-edge (or extends the
    source), and symmetrically for backward splits.
    """
    for v in g.vertices:
        indeg, outdeg = g.indegree(v), g.outdegree(v)
        if v != g.target:
            top = outdeg if indeg >= 2 else outdeg - 1
            outs = [e.id for e in g.out_edges(v)]
            for m in range(2, top + 1):
                for moved in combinations(outs, m):
                    yield ForwardSplit(v, frozenset(moved))
        if v != g.source:
            top = indeg if outdeg >= 2 else indeg - 1
            ins = [e.id for e in g.in_edges(v)]
            for m in range(2, top + 1):
                for moved in combinations(ins, m):
                    yield BackwardSplit(v, frozenset(moved))


def hub_expansions(pattern: DiGraph, max_vertices: int | None = None,
                   max_edges: int | None = None) -> list:
    """Every graph reachable from ``pattern`` by splits, up to isomorphism.

    Listed breadth first, so the unsplit pattern comes first and smaller
    expansions precede larger ones.  Every split adds one vertex and one edge;
    the optional bounds stop the search at a host's size.  Splits are not
    restricted to hubs: a source with three out-edges, for instance, must be
    split before it fits a host whose vertices all have outdegree two.
    """
    seen = {canonical_form(pattern)}
    out = [Expansion(pattern, ())]
    queue = deque(out)
    while queue:
        cur = queue.popleft()
        g = cur.graph
        if max_vertices is not None and g.n + 1 > max_vertices:
            continue
        if max_edges is not None and g.m + 1 > max_edges:
            continue
        for op in _split_moves(g):
            op = resolve(g, op)
            h = apply_embed_op(g, op)
            code = canonical_form(h)
            if code in seen:
                continue
            seen.add(code)
            exp = Expansion(h, cur.provenance + (op,))
            out.append(exp)
            queue.append(exp)
    return out


# -- h-embedding ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternMatch:
    vertex_map: dict
    edge_paths: dict  # pattern edge id -> host Path
    terminal_paths: tuple  # (host source -> image(source), image(target) -> host target)

    def used_edges(self) -> set:
        used = set()
        for p in list(self.edge_paths.values()) + list(self.terminal_paths):
            used.update(p.edges)
        return used

    def to_dict(self) -> dict:
        return {
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "edge_paths": {
                str(k): {"vertices": list(p.vertices), "edges": list(p.edges)}
                for k, p in sorted(self.edge_paths.items())
            },
            "terminal_paths": [
                {"vertices": list(p.vertices), "edges": list(p.edges)} for p in self.terminal_paths
            ],
        }


def validate_match(pattern: DiGraph, host: DiGraph, match: PatternMatch) -> bool:
    """Re-check a PatternMatch from scratch, independent of the search."""
    phi = match.vertex_map
    if set(phi) != set(pattern.vertices) or len(set(phi.values())) != len(phi):
        return False
    if set(match.edge_paths) != {e.id for e in pattern.edges}:
        return False
    images = set(phi.values())
    demands = [(phi[e.tail], phi[e.head], match.edge_paths[e.id]) for e in pattern.edges]
    src, tgt = match.terminal_paths
    demands.append((host.source, phi[pattern.source], src))
    demands.append((phi[pattern.target], host.target, tgt))
    interior_used: set = set()
    edges_used: set = set()
    for a, b, p in demands:
        if p.vertices[0] != a or p.vertices[-1] != b:
            return False
        if len(p.vertices) != len(p.edges) + 1 or len(set(p.vertices)) != len(p.vertices):
            return False
        for i, eid in enumerate(p.edges):
            if not host.has_edge_id(eid):
                return False
            e = host.edge(eid)
            if (e.tail, e.head) != (p.vertices[i], p.vertices[i + 1]):
                return False
        if edges_used & set(p.edges):
            return False
        edges_used |= set(p.edges)
        inner = set(p.vertices[1:-1])
        if inner & images or inner & interior_used:
            return False
        interior_used |= inner
    # terminal paths are zero length exactly when the image is the host terminal
    if host.source in interior_used or host.target in interior_used:
        return False
    if host.source in images and phi[pattern.source] != host.source:
        return False
    if host.target in images and phi[pattern.target] != host.target:
        return False
    return True


def _demands(pattern: DiGraph, host: DiGraph, phi: dict) -> list:
    dem = [(e.id, phi[e.tail], phi[e.head]) for e in pattern.edges]
    if phi[pattern.source] != host.source:
        dem.append(("s", host.source, phi[pattern.source]))
    if phi[pattern.target] != host.target:
        dem.append(("t", phi[pattern.target], host.target))
    return dem


def _vertex_maps(pattern: DiGraph, host: DiGraph, host_reach: dict):
    """Injective maps pattern -> host, pruned by degree and reachability."""
    porder = topological_order(pattern)
    preach = {v: reachable_from(pattern, v) for v in pattern.vertices}
    hpos = {v: i for i, v in enumerate(topological_order(host))}
    need_in = {}
    need_out = {}
    for v in pattern.vertices:
        need_in[v] = pattern.indegree(v)
        need_out[v] = pattern.outdegree(v)
    candidates = {}
    for v in porder:
        cands = []
        for h in sorted(host.vertices, key=hpos.get):
            extra_in = 1 if v == pattern.source and h != host.source else 0
            extra_out = 1 if v == pattern.target and h != host.target else 0
            if host.indegree(h) < need_in[v] + extra_in:
                continue
            if host.outdegree(h) < need_out[v] + extra_out:
                continue
            if h == host.source and v != pattern.source:
                continue
            if h == host.target and v != pattern.target:
                continue
            cands.append(h)
        candidates[v] = cands

    phi: dict = {}
    used: set = set()

    def extend(i):
        if i == len(porder):
            yield dict(phi)
            return
        v = porder[i]
        for h in candidates[v]:
            if h in used:
                continue
            ok = True
            for u, hu in phi.items():
                if v in preach[u] and h not in host_reach[hu]:
                    ok = False
                    break
                if u in preach[v] and hu not in host_reach[h]:
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = h
            used.add(h)
            yield from extend(i + 1)
            used.discard(h)
            del phi[v]

    yield from extend(0)


def is_h_embedded(pattern: DiGraph, host: DiGraph):
    """Terminal-anchored subgraph homeomorphism test; returns a PatternMatch or None."""
    pattern = validate_tdag(pattern)
    host = validate_tdag(host)
    if pattern.n > host.n or pattern.m > host.m:
        return None
    pos = host.position
    host_reach = {v: reachable_from(host, v) for v in host.vertices}
    for phi in _vertex_maps(pattern, host, host_reach):
        demands = _demands(pattern, host, phi)
        paths = port_split_paths(host, pos, set(phi.values()), [(a, b) for _, a, b in demands])
        if paths is None:
            continue
        edge_paths = {}
        src = Path((host.source,), ())
        tgt = Path((host.target,), ())
        for (key, _, _), p in zip(demands, paths):
            if key == "s":
                src = p
            elif key == "t":
                tgt = p
            else:
                edge_paths[key] = p
        return PatternMatch(phi, edge_paths, (src, tgt))
    return None


# -- d-embedding and d-minors -------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    expansion: Expansion
    match: PatternMatch
    expansion_index: int = 0

    def to_dict(self) -> dict:
        from .ops import op_to_dict

        return {
            "expansion": self.expansion.graph.to_dict(),
            "expansion_index": self.expansion_index,
            "provenance": [op_to_dict(op) for op in self.expansion.provenance],
            "match": self.match.to_dict(),
        }


def _host_tdag(host: DiGraph):
    try:
        topological_order(host)
    except CycleFound:
        return None
    try:
        return validate_tdag(host)
    except GraphError as exc:
        raise HostNotTwoTerminal(str(exc)) from None


def is_d_embedded(pattern: DiGraph, host: DiGraph):
    """First expansion of ``pattern`` that is h-embedded in ``host``, with its match, or None."""
    pattern = validate_tdag(pattern)
    host_t = _host_tdag(host)
    if host_t is None:
        return None
    if pattern.n > host_t.n or pattern.m > host_t.m:
        return None
    for idx, exp in enumerate(hub_expansions(pattern, host_t.n, host_t.m)):
        match = is_h_embedded(exp.graph, host_t)
        if match is not None:
            return Embedding(exp, match, idx)
    return None


@dataclass(frozen=True)
class MinorResult:
    pattern: DiGraph
    host: DiGraph
    embedding: Embedding | None = field(default=None)

    @property
    def found(self) -> bool:
        return self.embedding is not None

    def __bool__(self):
        return self.found

    def op_sequence(self) -> OpSequence:
        if self.embedding is None:
            raise GraphError("no certificate: pattern is not a d-minor")
        return minor_sequence_from_embedding(self.pattern, self.host, self.embedding)


def is_d_minor(pattern: DiGraph, host: DiGraph) -> MinorResult:
    return MinorResult(pattern, host, is_d_embedded(pattern, validate_tdag(host)))


# -- certificates as op sequences -------------------------------------------------------------------


def ears(host: DiGraph, keep_edges) -> list:
    """Decompose host minus a valid subgraph into ears, in construction order.

    Each ear is a Path whose endpoints already belong to the growing subgraph
    and whose interior vertices are new.  Adding the ears in order rebuilds
    the host from the subgraph.
    """
    kept = set(keep_edges)
    verts = {host.source, host.target}
    for eid in kept:
        e = host.edge(eid)
        verts.update((e.tail, e.head))
    result = []
    while len(kept) < host.m:
        e = next(e for e in host.edges if e.id not in kept and e.tail in verts)
        if e.head in verts:
            ear = Path((e.tail, e.head), (e.id,))
        else:
            rest = _path_to_set(host, e.head, verts)
            ear = Path((e.tail,) + rest.vertices, (e.id,) + rest.edges)
        result.append(ear)
        kept.update(ear.edges)
        verts.update(ear.vertices)
    return result


def _path_to_set(host: DiGraph, start, targets: set) -> Path:
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x in targets:
            verts, edges = [x], []
            while parent[verts[-1]] is not None:
                e = parent[verts[-1]]
                edges.append(e.id)
                verts.append(e.tail)
            return Path(tuple(reversed(verts)), tuple(reversed(edges)))
        for e in host.out_edges(x):
            if e.head not in parent:
                parent[e.head] = e
                queue.append(e.head)
    raise GraphError("no ear closes; the subgraph is not valid")


def strip_to_subgraph_ops(host: DiGraph, keep_edges) -> list:
    """d-minor ops deleting every host edge and vertex outside a valid subgraph."""
    ops = []
    for ear in reversed(ears(host, keep_edges)):
        for eid in ear.edges[:-1]:
            ops.append(BackwardContract(eid))
        ops.append(Delete(ear.edges[-1]))
    return ops


def minor_sequence_from_embedding(pattern: DiGraph, host: DiGraph, emb: Embedding) -> OpSequence:
    exp, match = emb.expansion, emb.match
    ops = strip_to_subgraph_ops(host, match.used_edges())
    src, tgt = match.terminal_paths
    ops += [ForwardContract(eid) for eid in src.edges]
    ops += [BackwardContract(eid) for eid in reversed(tgt.edges)]
    emap = {}
    for fid, p in match.edge_paths.items():
        ops += [BackwardContract(eid) for eid in p.edges[:-1]]
        emap[fid] = p.edges[-1]
    for op in reversed(exp.provenance):
        if isinstance(op, ForwardSplit):
            ops.append(BackwardContract(emap[op.new_edge]))
        elif isinstance(op, BackwardSplit):
            ops.append(ForwardContract(emap[op.new_edge]))
        else:
            raise GraphError(f"unexpected provenance op {op}")
    return OpSequence(host, tuple(ops), pattern)
