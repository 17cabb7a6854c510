"""Serial, concurrent and parallel edge sets; longest paths."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .disjoint import port_split_paths
from .graph import DiGraph, Path, find_path, join_paths, reachable_from, validate_tdag


@dataclass(frozen=True)
class EdgeSet:
    edges: frozenset
    endpoints: dict  # edge id -> (tail, head)

    @classmethod
    def of(cls, g: DiGraph, edge_ids) -> "EdgeSet":
        ids = frozenset(edge_ids)
        return cls(ids, {i: (g.edge(i).tail, g.edge(i).head) for i in ids})

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))


def _ids(S) -> list:
    if isinstance(S, EdgeSet):
        return sorted(S.edges)
    return sorted(set(S))


@dataclass(frozen=True)
class CutCertificate:
    """Vertex-disjoint trees: source to every tail of S, every head of S to target."""

    forward_tree: frozenset
    backward_tree: frozenset

    def to_dict(self) -> dict:
        return {"forward_tree": sorted(self.forward_tree), "backward_tree": sorted(self.backward_tree)}

    def forward_parent(self, g: DiGraph) -> dict:
        """vertex -> (parent vertex, edge id) in the forward tree."""
        return {g.edge(e).head: (g.edge(e).tail, e) for e in self.forward_tree}

    def backward_child(self, g: DiGraph) -> dict:
        """vertex -> (child vertex, edge id) in the backward tree (child is toward the target)."""
        return {g.edge(e).tail: (g.edge(e).head, e) for e in self.backward_tree}


# -- serial / concurrent ---------------------------------------------------------------


def is_serial(g: DiGraph, S):
    """An s-t path containing every edge of S, or None."""
    g = validate_tdag(g)
    pos = g.position
    edges = sorted((g.edge(i) for i in _ids(S)), key=lambda e: pos[e.tail])
    if not edges:
        return find_path(g, g.source, g.target)
    if len({e.tail for e in edges}) < len(edges) or len({e.head for e in edges}) < len(edges):
        return None
    for e, f in zip(edges, edges[1:]):
        if pos[e.head] > pos[f.tail]:
            return None
    pieces = []
    cur = g.source
    for e in edges:
        seg = find_path(g, cur, e.tail)
        if seg is None:
            return None
        pieces.append(seg)
        pieces.append(Path((e.tail, e.head), (e.id,)))
        cur = e.head
    seg = find_path(g, cur, g.target)
    if seg is None:
        return None
    pieces.append(seg)
    path = join_paths(*pieces)
    assert len(set(path.vertices)) == len(path.vertices)
    return path


def is_concurrent(g: DiGraph, S) -> bool:
    g = validate_tdag(g)
    ids = _ids(S)
    for eid in ids:
        e = g.edge(eid)
        others = [i for i in ids if i != eid]
        if e.tail not in reachable_from(g, g.source, banned_edges=others):
            return False
        if g.target not in reachable_from(g, e.head, banned_edges=others):
            return False
    return True


# -- parallel -------------------------------------------------------------------------------


def _trees(g, pos, reach, root, keys, junction_cands, forward):
    """Reduced tree shapes on {root} + keys + some junctions.

    Yields (junctions, parent map) where, for a forward tree, parent[c] is a key
    or junction preceding c; for a backward tree the relation is mirrored so
    ``parent`` maps a node to its successor toward the root.
    """
    keys = sorted(set(keys) - {root}, key=pos.get)
    max_j = max(len(keys) - 1, 0)
    for size in range(0, max_j + 1):
        for junctions in combinations(junction_cands, size):
            nodes = sorted(set(keys) | set(junctions), key=pos.get)
            if not forward:
                nodes = nodes[::-1]
            pool = [root] + nodes
            choices = []
            for c in nodes:
                if forward:
                    opts = [p for p in pool if pos[p] < pos[c] and c in reach[p]]
                else:
                    opts = [p for p in pool if pos[p] > pos[c] and p in reach[c]]
                if not opts:
                    break
                choices.append(opts)
            else:
                for combo in product(*choices):
                    parent = dict(zip(nodes, combo))
                    counts: dict = {}
                    for p in combo:
                        counts[p] = counts.get(p, 0) + 1
                    if all(counts.get(j, 0) >= 2 for j in junctions):
                        yield junctions, parent


def is_parallel(g: DiGraph, S):
    """CutCertificate (vertex-disjoint forward and backward trees) or None.

    Cost grows like |V| to the power O(|S|^2); meant for small |S|.
    """
    g = validate_tdag(g)
    ids = _ids(S)
    if not ids:
        return CutCertificate(frozenset(), frozenset())
    edges = [g.edge(i) for i in ids]
    tails = {e.tail for e in edges}
    heads = {e.head for e in edges}
    if tails & heads:
        return None
    pos = g.position
    reach = {v: reachable_from(g, v) for v in g.vertices}
    fixed = tails | heads | {g.source, g.target}
    free = [v for v in g.vertices if v not in fixed]
    fwd_cands = [v for v in free if sum(1 for a in tails if a in reach[v]) >= 2]
    bwd_cands = [v for v in free if sum(1 for b in heads if v in reach[b]) >= 2]

    for xj, fparent in _trees(g, pos, reach, g.source, tails, fwd_cands, True):
        used = set(xj)
        for yj, bparent in _trees(g, pos, reach, g.target, heads, [v for v in bwd_cands if v not in used], False):
            demands = [(p, c) for c, p in fparent.items()] + [(c, p) for c, p in bparent.items()]
            special = fixed | set(xj) | set(yj)
            paths = port_split_paths(g, pos, special, demands)
            if paths is None:
                continue
            nf = len(fparent)
            ft = frozenset(e for p in paths[:nf] for e in p.edges)
            bt = frozenset(e for p in paths[nf:] for e in p.edges)
            return CutCertificate(ft, bt)
    return None


def is_serial_parallel(g: DiGraph, S):
    """(path, certificate) when S is both serial and parallel, else None."""
    path = is_serial(g, S)
    if path is None:
        return None
    cert = is_parallel(g, S)
    if cert is None:
        return None
    return path, cert


def check_cut_certificate(g: DiGraph, S, cert: CutCertificate) -> bool:
    """Independent check: the trees are disjoint, rooted correctly and reach all endpoints."""
    g = validate_tdag(g)
    ids = _ids(S)
    tails = {g.edge(i).tail for i in ids}
    heads = {g.edge(i).head for i in ids}

    def tree_vertices(edge_ids, root, forward):
        verts = {root}
        seen_child = set()
        for eid in edge_ids:
            e = g.edge(eid)
            child = e.head if forward else e.tail
            if child in seen_child:
                return None
            seen_child.add(child)
            verts.update((e.tail, e.head))
        # every vertex must connect to the root inside the tree
        adj = {}
        for eid in edge_ids:
            e = g.edge(eid)
            a, b = (e.tail, e.head) if forward else (e.head, e.tail)
            adj.setdefault(a, []).append(b)
        got = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w not in got:
                    got.add(w)
                    stack.append(w)
        return verts if got == verts else None

    fv = tree_vertices(cert.forward_tree, g.source, True)
    bv = tree_vertices(cert.backward_tree, g.target, False)
    if fv is None or bv is None:
        return False
    if fv & bv:
        return False
    return tails <= fv and heads <= bv


# -- minimal cuts ------------------------------------------------------------------------


def minimal_cut_sides(g: DiGraph):
    """Source sides X of all minimal s-t cuts, as frozensets, in a fixed order.

    The cut is the set of edges leaving X.  It is minimal, and X is its own
    source side, exactly when every vertex of X is reachable from s inside X
    and the head of every cut edge reaches t without entering X.
    Vertices are decided in topological order: a vertex can join X only if an
    in-neighbour already has, which prunes most branches early.
    """
    g = validate_tdag(g)
    order = list(g.topo_order)
    inner = order[1:-1]
    side = {g.source: True, g.target: False}

    def coreach_ok():
        ok = {g.target}
        for v in reversed(inner):
            if not side[v] and any(e.head in ok for e in g.out_edges(v)):
                ok.add(v)
        return all(e.head in ok for v in order if side[v] for e in g.out_edges(v) if not side[e.head])

    def rec(i):
        if i == len(inner):
            if coreach_ok():
                yield frozenset(v for v in order if side[v])
            return
        v = inner[i]
        if any(side[e.tail] for e in g.in_edges(v)):
            side[v] = True
            yield from rec(i + 1)
        side[v] = False
        yield from rec(i + 1)
        del side[v]

    if g.n == 1:
        return
    yield from rec(0)


def cut_edges(g: DiGraph, X) -> frozenset:
    return frozenset(e.id for e in g.edges if e.tail in X and e.head not in X)


def max_parallel_set(g: DiGraph) -> frozenset:
    """Edge ids of a largest minimal s-t cut (ties go to the first side found)."""
    best = frozenset()
    for X in minimal_cut_sides(g):
        c = cut_edges(g, X)
        if len(c) > len(best):
            best = c
    return best


# -- longest paths ---------------------------------------------------------------------


def longest_path(g: DiGraph) -> Path:
    """A maximum-length s-t path; among equals, predecessors with lower edge ids win."""
    g = validate_tdag(g)
    dist = {g.source: 0}
    best = {}
    for v in g.topo_order[1:]:
        choice = None
        for e in g.in_edges(v):
            cand = (dist[e.tail] + 1, -e.id)
            if choice is None or cand > choice[0]:
                choice = (cand, e)
        dist[v] = choice[0][0]
        best[v] = choice[1]
    verts, edges = [g.target], []
    while verts[-1] != g.source:
        e = best[verts[-1]]
        edges.append(e.id)
        verts.append(e.tail)
    return Path(tuple(reversed(verts)), tuple(reversed(edges)))


def max_serial_general(g: DiGraph, k: int):
    """A simple s-t path of length at least k in a possibly cyclic 2-terminal graph, or None.

    Lists simple paths of length k from the source, then tries to finish each
    one to the target avoiding the prefix.
    """
    if k <= 0:
        return find_path(g, g.source, g.target)
    prefix = [g.source]
    pedges: list = []

    def extend():
        x = prefix[-1]
        if len(pedges) == k:
            rest = find_path(g, x, g.target, banned_vertices=set(prefix[:-1]))
            if rest is None:
                return None
            return join_paths(Path(tuple(prefix), tuple(pedges)), rest)
        if x == g.target:
            return None
        for e in g.out_edges(x):
            if e.head in prefix:
                continue
            prefix.append(e.head)
            pedges.append(e.id)
            got = extend()
            prefix.pop()
            pedges.pop()
            if got is not None:
                return got
        return None

    return extend()
