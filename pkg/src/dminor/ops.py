"""d-minor and d-embedding operations, their inverses, and replayable witnesses.

Vertex ids after a contraction: BackwardContract keeps the tail, ForwardContract
keeps the head.  With that convention a split followed by the inverse
contraction restores every vertex and edge id exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Union

from .errors import (
    GraphError,
    NotInvertibleOutsideTdag,
    PreconditionViolated,
    VertexNotFound,
)
from .graph import DiGraph, Edge, Tdag, has_path, is_acyclic, validate_tdag
from .iso import is_isomorphic


# -- op records ------------------------------------------------------------------


@dataclass(frozen=True)
class Delete:
    edge: int


@dataclass(frozen=True)
class BackwardContract:
    edge: int


@dataclass(frozen=True)
class ForwardContract:
    edge: int


@dataclass(frozen=True)
class AddEdge:
    tail: int
    head: int
    new_edge: int | None = None


@dataclass(frozen=True)
class ForwardSplit:
    """Move ``moved`` out-edges of ``vertex`` onto a new vertex hanging below it."""

    vertex: int
    moved: frozenset
    new_vertex: int | None = None
    new_edge: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "moved", frozenset(self.moved))


@dataclass(frozen=True)
class BackwardSplit:
    """Move ``moved`` in-edges of ``vertex`` onto a new vertex feeding into it."""

    vertex: int
    moved: frozenset
    new_vertex: int | None = None
    new_edge: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "moved", frozenset(self.moved))


@dataclass(frozen=True)
class Subdivide:
    """Replace edge (a, b) by (a, c) with id ``new_edge`` and (c, b) keeping the old id."""

    edge: int
    new_vertex: int | None = None
    new_edge: int | None = None


@dataclass(frozen=True)
class TerminalExtend:
    end: str  # "source" or "target"
    new_vertex: int | None = None
    new_edge: int | None = None

    def __post_init__(self):
        if self.end not in ("source", "target"):
            raise ValueError("end must be 'source' or 'target'")


MinorOp = Union[Delete, BackwardContract, ForwardContract]
EmbedOp = Union[AddEdge, ForwardSplit, BackwardSplit, Subdivide, TerminalExtend]
MINOR_OPS = (Delete, BackwardContract, ForwardContract)
EMBED_OPS = (AddEdge, ForwardSplit, BackwardSplit, Subdivide, TerminalExtend)

_TAGS = {
    Delete: "delete",
    BackwardContract: "backward_contract",
    ForwardContract: "forward_contract",
    AddEdge: "add_edge",
    ForwardSplit: "forward_split",
    BackwardSplit: "backward_split",
    Subdivide: "subdivide",
    TerminalExtend: "terminal_extend",
}
_BY_TAG = {v: k for k, v in _TAGS.items()}


def op_to_dict(op) -> dict:
    d = {"op": _TAGS[type(op)]}
    for f in fields(op):
        val = getattr(op, f.name)
        d[f.name] = sorted(val) if isinstance(val, frozenset) else val
    return d


def op_from_dict(d: dict):
    try:
        cls = _BY_TAG[d["op"]]
        kwargs = {f.name: d[f.name] for f in fields(cls) if f.name in d}
        return cls(**kwargs)
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed op record {d!r}: {exc}") from None


# -- helpers -------------------------------------------------------------------------


def _result(g: DiGraph, vertices, edges, source, target) -> DiGraph:
    out = DiGraph(tuple(vertices), tuple(edges), source, target)
    if isinstance(g, Tdag):
        return validate_tdag(out)
    return out


def _merge(g: DiGraph, e: Edge, keep, gone) -> DiGraph:
    edges = []
    for f in g.edges:
        if f.id == e.id:
            continue
        tail = keep if f.tail == gone else f.tail
        head = keep if f.head == gone else f.head
        if tail == head:
            raise PreconditionViolated(f"contracting edge {e.id} would create a self-loop")
        edges.append(Edge(f.id, tail, head))
    verts = [v for v in g.vertices if v != gone]
    source = keep if g.source == gone else g.source
    target = keep if g.target == gone else g.target
    return _result(g, verts, edges, source, target)


def _need_vertex(g: DiGraph, v):
    if not g.has_vertex(v):
        raise VertexNotFound(v)


def _fresh_ids(g: DiGraph, new_vertex, new_edge):
    nv = g.next_vertex_id() if new_vertex is None else new_vertex
    ne = g.next_edge_id() if new_edge is None else new_edge
    if g.has_vertex(nv):
        raise PreconditionViolated(f"vertex id {nv} already in use")
    if g.has_edge_id(ne):
        raise PreconditionViolated(f"edge id {ne} already in use")
    return nv, ne


def resolve(g: DiGraph, op):
    """Fill in default new ids so the op record names everything it creates."""
    if isinstance(op, AddEdge):
        if op.new_edge is None:
            return replace(op, new_edge=g.next_edge_id())
        return op
    if isinstance(op, (ForwardSplit, BackwardSplit, Subdivide, TerminalExtend)):
        nv = g.next_vertex_id() if op.new_vertex is None else op.new_vertex
        ne = g.next_edge_id() if op.new_edge is None else op.new_edge
        return replace(op, new_vertex=nv, new_edge=ne)
    return op


# -- application -------------------------------------------------------------------------


def check_minor_op(g: DiGraph, op) -> None:
    """Raise PreconditionViolated / EdgeNotFound unless op is legal on g."""
    if not isinstance(op, MINOR_OPS):
        raise PreconditionViolated(f"{type(op).__name__} is not a d-minor operation")
    e = g.edge(op.edge)
    if isinstance(op, Delete):
        if g.outdegree(e.tail) < 2 or g.indegree(e.head) < 2:
            raise PreconditionViolated(
                f"delete {e.id}: needs outdegree({e.tail}) >= 2 and indegree({e.head}) >= 2"
            )
    elif isinstance(op, BackwardContract):
        if g.indegree(e.head) != 1:
            raise PreconditionViolated(f"backward contract {e.id}: indegree({e.head}) != 1")
    elif g.outdegree(e.tail) != 1:
        raise PreconditionViolated(f"forward contract {e.id}: outdegree({e.tail}) != 1")


def apply_minor_op(g: DiGraph, op) -> DiGraph:
    check_minor_op(g, op)
    e = g.edge(op.edge)
    if isinstance(op, Delete):
        return _result(g, g.vertices, [f for f in g.edges if f.id != e.id], g.source, g.target)
    if isinstance(op, BackwardContract):
        return _merge(g, e, keep=e.tail, gone=e.head)
    return _merge(g, e, keep=e.head, gone=e.tail)


def apply_embed_op(g: DiGraph, op) -> DiGraph:
    if not isinstance(op, EMBED_OPS):
        raise PreconditionViolated(f"{type(op).__name__} is not a d-embedding operation")
    if isinstance(op, AddEdge):
        _need_vertex(g, op.tail)
        _need_vertex(g, op.head)
        if op.tail == op.head:
            raise PreconditionViolated("add edge: self-loop")
        if has_path(g, op.head, op.tail):
            raise PreconditionViolated(f"add edge: path {op.head} -> {op.tail} exists")
        _, ne = _fresh_ids(g, g.next_vertex_id(), op.new_edge)
        return _result(g, g.vertices, g.edges + (Edge(ne, op.tail, op.head),), g.source, g.target)

    if isinstance(op, (ForwardSplit, BackwardSplit)):
        forward = isinstance(op, ForwardSplit)
        v = op.vertex
        _need_vertex(g, v)
        if forward and v == g.target:
            raise PreconditionViolated("forward split of the target")
        if not forward and v == g.source:
            raise PreconditionViolated("backward split of the source")
        side = {e.id for e in (g.out_edges(v) if forward else g.in_edges(v))}
        if not op.moved:
            raise PreconditionViolated("split must move at least one edge")
        if not op.moved <= side:
            raise PreconditionViolated(
                f"split moves edges {sorted(op.moved - side)} not incident to {v} on that side"
            )
        nv, ne = _fresh_ids(g, op.new_vertex, op.new_edge)
        edges = []
        for f in g.edges:
            if f.id in op.moved:
                f = Edge(f.id, nv, f.head) if forward else Edge(f.id, f.tail, nv)
            edges.append(f)
        edges.append(Edge(ne, v, nv) if forward else Edge(ne, nv, v))
        return _result(g, g.vertices + (nv,), edges, g.source, g.target)

    if isinstance(op, Subdivide):
        e = g.edge(op.edge)
        nv, ne = _fresh_ids(g, op.new_vertex, op.new_edge)
        edges = [f for f in g.edges if f.id != e.id]
        edges += [Edge(ne, e.tail, nv), Edge(e.id, nv, e.head)]
        return _result(g, g.vertices + (nv,), edges, g.source, g.target)

    nv, ne = _fresh_ids(g, op.new_vertex, op.new_edge)
    if op.end == "source":
        return _result(g, g.vertices + (nv,), g.edges + (Edge(ne, nv, g.source),), nv, g.target)
    return _result(g, g.vertices + (nv,), g.edges + (Edge(ne, g.target, nv),), g.source, nv)


def apply_op(g: DiGraph, op) -> DiGraph:
    if isinstance(op, MINOR_OPS):
        return apply_minor_op(g, op)
    return apply_embed_op(g, op)


def legal_minor_ops(g: DiGraph) -> list:
    """Every legal d-minor op on g, in edge-id order (delete, backward, forward)."""
    ops = []
    for e in g.edges:
        for cls in MINOR_OPS:
            op = cls(e.id)
            try:
                check_minor_op(g, op)
            except PreconditionViolated:
                continue
            if cls is not Delete and any(
                f.tail == e.head and f.head == e.tail for f in g.edges
            ):
                continue  # would close a self-loop
            ops.append(op)
    return ops


# -- inversion -------------------------------------------------------------------------------


def invert_op(g_before: DiGraph, op):
    """The op of the opposite family undoing ``op`` on ``g_before``.

    The inverse restores every vertex and edge id, so replaying op and then the
    inverse returns g_before itself (not merely an isomorphic copy).
    """
    if not is_acyclic(g_before):
        raise NotInvertibleOutsideTdag("inversion is only defined on TDAGs")
    try:
        validate_tdag(g_before)
    except GraphError as exc:
        raise NotInvertibleOutsideTdag(f"input is not a TDAG: {exc}") from None
    op = resolve(g_before, op)
    apply_op(g_before, op)  # raises when op is not applicable

    if isinstance(op, Delete):
        e = g_before.edge(op.edge)
        return AddEdge(e.tail, e.head, e.id)
    if isinstance(op, BackwardContract):
        e = g_before.edge(op.edge)
        moved = frozenset(f.id for f in g_before.out_edges(e.head))
        if not moved:
            return TerminalExtend("target", e.head, e.id)
        return ForwardSplit(e.tail, moved, e.head, e.id)
    if isinstance(op, ForwardContract):
        e = g_before.edge(op.edge)
        moved = frozenset(f.id for f in g_before.in_edges(e.tail))
        if not moved:
            return TerminalExtend("source", e.tail, e.id)
        return BackwardSplit(e.head, moved, e.tail, e.id)
    if isinstance(op, AddEdge):
        return Delete(op.new_edge)
    if isinstance(op, ForwardSplit):
        return BackwardContract(op.new_edge)
    if isinstance(op, BackwardSplit):
        return ForwardContract(op.new_edge)
    if isinstance(op, Subdivide):
        return BackwardContract(op.new_edge)
    if op.end == "source":
        return ForwardContract(op.new_edge)
    return BackwardContract(op.new_edge)


# -- witnesses ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class OpSequence:
    start: DiGraph
    ops: tuple
    claimed_result: DiGraph

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def kind(self) -> str:
        if all(isinstance(op, MINOR_OPS) for op in self.ops):
            return "minor"
        if all(isinstance(op, EMBED_OPS) for op in self.ops):
            return "embed"
        return "mixed"

    def replay(self) -> list:
        """Graphs after each step, starting with ``start``; raises on an illegal step."""
        graphs = [self.start]
        for op in self.ops:
            graphs.append(apply_op(graphs[-1], op))
        return graphs

    def to_dict(self) -> dict:
        return {
            "start": self.start.to_dict(),
            "ops": [op_to_dict(op) for op in self.ops],
            "claimed_result": self.claimed_result.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OpSequence":
        try:
            return cls(
                DiGraph.from_dict(d["start"]),
                tuple(op_from_dict(o) for o in d["ops"]),
                DiGraph.from_dict(d["claimed_result"]),
            )
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed witness: {exc}") from None


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    failed_step: int | None = None  # 1-based index of the first illegal op
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_witness(w: OpSequence) -> WitnessCheck:
    g = w.start
    family = None
    for i, op in enumerate(w.ops, start=1):
        fam = "minor" if isinstance(op, MINOR_OPS) else "embed"
        if family is None:
            family = fam
        elif fam != family:
            return WitnessCheck(False, i, "sequence mixes minor and embedding operations")
        try:
            g = apply_op(g, op)
        except (GraphError, KeyError) as exc:
            return WitnessCheck(False, i, f"{type(exc).__name__}: {exc}")
    if is_isomorphic(g, w.claimed_result) is None:
        return WitnessCheck(False, None, "final graph is not isomorphic to the claimed result")
    return WitnessCheck(True)

