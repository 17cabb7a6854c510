"""Vertex-disjoint paths between fixed terminal pairs in a DAG.

Pebbling search: one pebble per pair starts on its source vertex.  The only
legal move advances the unfinished pebble that sits earliest in topological
order, along one out-edge, to a vertex no other pebble occupies.  Because the
moving pebble is always the earliest, it can never land on a vertex another
pebble has already left, so positions alone describe the state and a plain
breadth-first search over position tuples is complete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import CycleFound, CyclicInput, MalformedQuery
from .graph import DiGraph, Path, topological_order


@dataclass(frozen=True)
class PathSolution:
    paths: tuple  # one Path per query pair, in query order

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def __getitem__(self, i):
        return self.paths[i]


def check_query(pairs) -> list:
    pairs = [tuple(p) for p in pairs]
    seen = set()
    for a, b in pairs:
        ends = {a, b}
        if ends & seen:
            raise MalformedQuery(f"endpoint shared between pairs: {sorted(ends & seen)}")
        seen |= ends
    return pairs


def _co_reach(in_adj: dict, target) -> set:
    seen = {target}
    stack = [target]
    while stack:
        v = stack.pop()
        for u in in_adj.get(v, ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def solve_pebbles(out_adj: dict, order: dict, pairs: list, stats: dict | None = None):
    """Core search on an abstract DAG.

    ``out_adj`` maps a vertex to a list of (edge_key, head) sorted by edge_key;
    ``order`` maps every vertex to its topological position.  Returns a list of
    (vertices, edge_keys) per pair, or None.
    """
    m = len(pairs)
    if m == 0:
        if stats is not None:
            stats["states"] = 1
        return []
    in_adj: dict = {}
    for u, outs in out_adj.items():
        for _, w in outs:
            in_adj.setdefault(w, []).append(u)
    targets = [b for _, b in pairs]
    can_reach = [_co_reach(in_adj, b) for b in targets]
    start = tuple(a for a, _ in pairs)
    goal = tuple(targets)
    if any(a not in can_reach[i] for i, a in enumerate(start)):
        if stats is not None:
            stats["states"] = 1
        return None
    target_set = set(targets)

    parent = {start: None}
    queue = deque([start])
    found = start == goal
    while queue and not found:
        state = queue.popleft()
        movable = [i for i in range(m) if state[i] != goal[i]]
        i = min(movable, key=lambda j: order[state[j]])
        occupied = set(state)
        for key, w in out_adj.get(state[i], ()):
            if w in occupied or w not in can_reach[i]:
                continue
            if w in target_set and w != goal[i]:
                continue
            nxt = state[:i] + (w,) + state[i + 1:]
            if nxt in parent:
                continue
            parent[nxt] = (state, i, key)
            if nxt == goal:
                found = True
                break
            queue.append(nxt)
    if stats is not None:
        stats["states"] = len(parent)
    if not found:
        return None

    verts = [[b] for b in goal]
    keys: list = [[] for _ in range(m)]
    state = goal
    while parent[state] is not None:
        prev, i, key = parent[state]
        verts[i].append(prev[i])
        keys[i].append(key)
        state = prev
    return [(tuple(reversed(verts[i])), tuple(reversed(keys[i]))) for i in range(m)]


def vertex_disjoint_paths_dag(g: DiGraph, pairs, stats: dict | None = None):
    """Pairwise vertex-disjoint paths, one per (from, to) pair, or None.

    Endpoints of different pairs must be distinct; a pair with from == to gets
    the zero-length path and its vertex is off limits to every other path.
    """
    pairs = check_query(pairs)
    for a, b in pairs:
        if not g.has_vertex(a) or not g.has_vertex(b):
            raise MalformedQuery(f"pair ({a}, {b}) names a vertex outside the graph")
    try:
        topo = topological_order(g)
    except CycleFound as exc:
        raise CyclicInput(f"graph has a cycle: {exc}") from None
    order = {v: i for i, v in enumerate(topo)}
    out_adj = {v: [(e.id, e.head) for e in g.out_edges(v)] for v in g.vertices}
    raw = solve_pebbles(out_adj, order, pairs, stats)
    if raw is None:
        return None
    return PathSolution(tuple(Path(vs, es) for vs, es in raw))


def port_split_paths(host: DiGraph, pos: dict, special, demands: list):
    """Disjoint paths for demands that share endpoint vertices.

    Every special vertex (and every demand endpoint) is replaced by one in-port
    per demand ending there and one out-port per demand starting there.
    In-ports take all in-edges, out-ports all out-edges, so special vertices
    can only be path endpoints.  Edges joining two special vertices get a
    midpoint so that no host edge serves two demands.  ``pos`` is a
    topological position map of the host.  Returns one host Path per demand,
    or None.
    """
    special = set(special) | {a for a, _ in demands} | {b for _, b in demands}
    out_ports: dict = {v: [] for v in special}
    in_ports: dict = {v: [] for v in special}
    pairs = []
    for j, (a, b) in enumerate(demands):
        op, ip = ("o", a, j), ("i", b, j)
        out_ports[a].append(op)
        in_ports[b].append(ip)
        pairs.append((op, ip))

    order = {}
    for v in host.vertices:
        p = pos[v]
        if v in special:
            for port in in_ports[v]:
                order[port] = (p, 0, port[2])
            for port in out_ports[v]:
                order[port] = (p, 2, port[2])
        else:
            order[("v", v)] = (p, 1, 0)

    adj: dict = {}
    for e in host.edges:
        tails = out_ports[e.tail] if e.tail in special else [("v", e.tail)]
        heads = in_ports[e.head] if e.head in special else [("v", e.head)]
        if not tails or not heads:
            continue
        if e.tail in special and e.head in special:
            mid = ("m", e.id)
            order[mid] = (pos[e.tail], 3, e.id)
            for t in tails:
                adj.setdefault(t, []).append(((e.id, 0), mid))
            adj[mid] = [((e.id, 1), h) for h in heads]
        else:
            for t in tails:
                adj.setdefault(t, []).extend(((e.id, 0), h) for h in heads)
    for k in adj:
        adj[k].sort(key=lambda kh: (kh[0], order[kh[1]]))

    raw = solve_pebbles(adj, order, pairs)
    if raw is None:
        return None
    paths = []
    for verts, keys in raw:
        hv = []
        for node in verts:
            if node[0] == "m":
                continue
            h = node[1]
            if not hv or hv[-1] != h:
                hv.append(h)
        he = [k[0] for k in keys if k[1] == 0]
        paths.append(Path(tuple(hv), tuple(he)))
    return paths


def check_solution(g: DiGraph, pairs, sol: PathSolution) -> bool:
    """Independent re-check: each path is well routed, simple, and all are vertex-disjoint."""
    pairs = [tuple(p) for p in pairs]
    if len(sol.paths) != len(pairs):
        return False
    used: set = set()
    for (a, b), p in zip(pairs, sol.paths):
        if p.vertices[0] != a or p.vertices[-1] != b:
            return False
        if len(p.vertices) != len(p.edges) + 1 or len(set(p.vertices)) != len(p.vertices):
            return False
        for k, eid in enumerate(p.edges):
            if not g.has_edge_id(eid):
                return False
            e = g.edge(eid)
            if (e.tail, e.head) != (p.vertices[k], p.vertices[k + 1]):
                return False
        if used & set(p.vertices):
            return False
        used |= set(p.vertices)
    return True
