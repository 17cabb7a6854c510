"""Directed multigraphs with designated terminals, and TDAG validation.

Edges carry integer identities so that parallel edges stay distinguishable.
Graph values are immutable; every rewrite returns a new graph.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import (
    BudgetExhausted,
    CycleFound,
    EdgeNotFound,
    GraphError,
    MultipleSinks,
    MultipleSources,
    TerminalMismatch,
    VertexNotFound,
)


class Edge(NamedTuple):
    id: int
    tail: int
    head: int


class Path(NamedTuple):
    """A directed walk given by its vertex sequence and the edge ids used.

    A zero-length path has one vertex and no edges.
    """

    vertices: tuple
    edges: tuple

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class DiGraph:
    vertices: tuple
    edges: tuple
    source: int
    target: int

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        edges = tuple(sorted(Edge(*e) for e in self.edges))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        vset = set(verts)
        seen = set()
        for e in edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.tail not in vset or e.head not in vset:
                raise GraphError(f"edge {e.id} references a missing vertex")
            if e.tail == e.head:
                raise GraphError(f"edge {e.id} is a self-loop")
        if self.source not in vset or self.target not in vset:
            raise GraphError("source and target must be vertices of the graph")
        if self.source == self.target and len(verts) != 1:
            raise GraphError("source equals target in a graph with more than one vertex")

    @classmethod
    def from_edges(cls, pairs: Iterable, source: int, target: int, vertices=None) -> "DiGraph":
        """Build a graph from (tail, head) pairs; edge ids are assigned 0, 1, ... in order."""
        pairs = list(pairs)
        verts = set(vertices or ())
        verts.update((source, target))
        for a, b in pairs:
            verts.update((a, b))
        edges = tuple(Edge(i, a, b) for i, (a, b) in enumerate(pairs))
        return cls(tuple(verts), edges, source, target)

    # -- adjacency -------------------------------------------------------

    @cached_property
    def _out(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.head].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def _by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    def out_edges(self, v) -> tuple:
        try:
            return self._out[v]
        except KeyError:
            raise VertexNotFound(v) from None

    def in_edges(self, v) -> tuple:
        try:
            return self._in[v]
        except KeyError:
            raise VertexNotFound(v) from None

    def outdegree(self, v) -> int:
        return len(self.out_edges(v))

    def indegree(self, v) -> int:
        return len(self.in_edges(v))

    def edge(self, eid) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise EdgeNotFound(eid) from None

    def has_edge_id(self, eid) -> bool:
        return eid in self._by_id

    def has_vertex(self, v) -> bool:
        return v in self._out

    def multiplicity(self, a, b) -> int:
        return sum(1 for e in self.out_edges(a) if e.head == b)

    def next_vertex_id(self) -> int:
        return max(self.vertices) + 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def replace(self, vertices=None, edges=None, source=None, target=None) -> "DiGraph":
        return DiGraph(
            self.vertices if vertices is None else tuple(vertices),
            self.edges if edges is None else tuple(edges),
            self.source if source is None else source,
            self.target if target is None else target,
        )

    def subgraph(self, edge_ids) -> "DiGraph":
        """Subgraph on the given edges plus the terminals and every edge endpoint."""
        keep = [self.edge(i) for i in edge_ids]
        verts = {self.source, self.target}
        for e in keep:
            verts.update((e.tail, e.head))
        return DiGraph(tuple(verts), tuple(keep), self.source, self.target)

    def relabel(self, vmap: dict) -> "DiGraph":
        edges = tuple(Edge(e.id, vmap[e.tail], vmap[e.head]) for e in self.edges)
        return DiGraph(tuple(vmap[v] for v in self.vertices), edges,
                       vmap[self.source], vmap[self.target])

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in self.edges],
            "source": self.source,
            "target": self.target,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiGraph":
        try:
            edges = tuple(Edge(int(e["id"]), int(e["tail"]), int(e["head"])) for e in data["edges"])
            return cls(tuple(int(v) for v in data["vertices"]), edges,
                       int(data["source"]), int(data["target"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph record: {exc}") from None


@dataclass(frozen=True)
class Tdag(DiGraph):
    """A DiGraph known to be a 2-terminal DAG.  Obtain one from :func:`validate_tdag`."""

    topo_order: tuple = field(default=())

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.topo_order)}

    def as_digraph(self) -> DiGraph:
        return DiGraph(self.vertices, self.edges, self.source, self.target)


# -- ordering and validation -------------------------------------------------


def topological_order(g: DiGraph) -> list:
    """Kahn's algorithm with ascending-id tie-breaking.

    Raises CycleFound carrying one directed cycle when g is not acyclic.
    """
    indeg = {v: g.indegree(v) for v in g.vertices}
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for e in g.out_edges(v):
            indeg[e.head] -= 1
            if indeg[e.head] == 0:
                heapq.heappush(heap, e.head)
    if len(order) == g.n:
        return order
    raise CycleFound(_find_cycle(g, {v for v, d in indeg.items() if d > 0}))


def _find_cycle(g: DiGraph, remaining: set) -> list:
    # every remaining vertex keeps an in-edge from another remaining vertex
    v = min(remaining)
    seen = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        e = min(e for e in g.in_edges(v) if e.tail in remaining)
        walk.append(e)
        v = e.tail
    cycle = list(reversed(walk[seen[v]:]))
    start = min(range(len(cycle)), key=lambda i: cycle[i].tail)
    return cycle[start:] + cycle[:start]


def is_acyclic(g: DiGraph) -> bool:
    try:
        topological_order(g)
    except CycleFound:
        return False
    return True


def validate_tdag(g: DiGraph) -> Tdag:
    """Check that g is a DAG whose unique source and sink are its declared terminals."""
    if isinstance(g, Tdag):
        return g
    order = topological_order(g)
    if g.n == 1:
        return Tdag(g.vertices, g.edges, g.source, g.target, tuple(order))
    sources = [v for v in g.vertices if g.indegree(v) == 0]
    sinks = [v for v in g.vertices if g.outdegree(v) == 0]
    if len(sources) > 1:
        raise MultipleSources(sources)
    if len(sinks) > 1:
        raise MultipleSinks(sinks)
    if sources != [g.source] or sinks != [g.target]:
        raise TerminalMismatch(
            f"declared terminals ({g.source}, {g.target}) differ from "
            f"actual source/sink ({sources}, {sinks})"
        )
    return Tdag(g.vertices, g.edges, g.source, g.target, tuple(order))


def is_tdag(g: DiGraph) -> bool:
    try:
        validate_tdag(g)
    except GraphError:
        return False
    return True


# -- reachability --------------------------------------------------------------


def reachable_from(g: DiGraph, u, banned_vertices=(), banned_edges=()) -> set:
    banned_vertices = set(banned_vertices)
    banned_edges = set(banned_edges)
    if u in banned_vertices:
        return set()
    seen = {u}
    stack = [u]
    while stack:
        v = stack.pop()
        for e in g.out_edges(v):
            if e.id in banned_edges or e.head in seen or e.head in banned_vertices:
                continue
            seen.add(e.head)
            stack.append(e.head)
    return seen


def reaching(g: DiGraph, v, banned_vertices=(), banned_edges=()) -> set:
    """Vertices from which v is reachable."""
    banned_vertices = set(banned_vertices)
    banned_edges = set(banned_edges)
    if v in banned_vertices:
        return set()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in g.in_edges(x):
            if e.id in banned_edges or e.tail in seen or e.tail in banned_vertices:
                continue
            seen.add(e.tail)
            stack.append(e.tail)
    return seen


def has_path(g: DiGraph, u, v) -> bool:
    """True iff a directed u-v walk exists; u == v counts (zero-length path)."""
    if not g.has_vertex(u):
        raise VertexNotFound(u)
    if not g.has_vertex(v):
        raise VertexNotFound(v)
    return v in reachable_from(g, u)


def find_path(g: DiGraph, u, v, banned_vertices=(), banned_edges=()):
    """Breadth-first u-v path exploring out-edges in ascending id order, or None."""
    banned_vertices = set(banned_vertices)
    banned_edges = set(banned_edges)
    if u in banned_vertices or v in banned_vertices:
        return None
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for e in g.out_edges(x):
            if e.id in banned_edges or e.head in parent or e.head in banned_vertices:
                continue
            parent[e.head] = e
            queue.append(e.head)
    if v not in parent:
        return None
    verts, edges = [v], []
    while parent[verts[-1]] is not None:
        e = parent[verts[-1]]
        edges.append(e.id)
        verts.append(e.tail)
    return Path(tuple(reversed(verts)), tuple(reversed(edges)))


def join_paths(*paths: Path) -> Path:
    verts = list(paths[0].vertices)
    edges = list(paths[0].edges)
    for p in paths[1:]:
        if p.vertices[0] != verts[-1]:
            raise GraphError("paths do not chain")
        verts.extend(p.vertices[1:])
        edges.extend(p.edges)
    return Path(tuple(verts), tuple(edges))


def path_from_edges(g: DiGraph, start, edge_ids) -> Path:
    verts = [start]
    for eid in edge_ids:
        e = g.edge(eid)
        if e.tail != verts[-1]:
            raise GraphError(f"edge {eid} does not continue the path")
        verts.append(e.head)
    return Path(tuple(verts), tuple(edge_ids))


def st_paths(g: DiGraph, limit: int | None = None):
    """Yield every simple source-target path (as Path), depth-first, ascending edge ids."""
    if g.source == g.target:
        yield Path((g.source,), ())
        return
    count = 0
    verts = [g.source]
    edges: list = []
    on_path = {g.source}
    stack = [iter(g.out_edges(g.source))]
    while stack:
        e = next(stack[-1], None)
        if e is None:
            stack.pop()
            on_path.discard(verts.pop())
            if edges:
                edges.pop()
            continue
        if e.head in on_path:
            continue
        if e.head == g.target:
            yield Path(tuple(verts) + (e.head,), tuple(edges) + (e.id,))
            count += 1
            if limit is not None and count >= limit:
                return
            continue
        verts.append(e.head)
        edges.append(e.id)
        on_path.add(e.head)
        stack.append(iter(g.out_edges(e.head)))


# -- general 2-terminal check ------------------------------------------------------


def validate_two_terminal_general(g: DiGraph, budget: int = 1_000_000) -> bool:
    """Decide the 2-terminal property for a possibly cyclic graph by backtracking.

    An edge (u, v) lies on a simple source-target path iff there are vertex-disjoint
    simple paths source->u and v->target.  For each edge this enumerates simple
    source->u paths and searches for a v->target path avoiding them.  Each path
    extension counts against ``budget``; BudgetExhausted is raised when it runs out.
    """
    if g.n == 1:
        return True
    steps = [0]

    def tick():
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExhausted(f"gave up after {budget} steps")

    def edge_ok(e: Edge) -> bool:
        u, v = e.tail, e.head
        if v == g.source or u == g.target:
            return False
        on_path = [g.source]
        used = {g.source}

        def extend(x) -> bool:
            tick()
            if x == u:
                return find_path(g, v, g.target, banned_vertices=used) is not None
            for f in g.out_edges(x):
                if f.head in used or f.head == v:
                    continue
                used.add(f.head)
                on_path.append(f.head)
                if extend(f.head):
                    return True
                used.discard(on_path.pop())
            return False

        return extend(g.source)

    covered = {g.source, g.target}
    for e in g.edges:
        if not edge_ok(e):
            return False
        covered.update((e.tail, e.head))
    return covered == set(g.vertices)
