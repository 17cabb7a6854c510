"""Parallel width, serial-parallel width, and constructive G_SP(k) minor witnesses.

Two engines decide SPW(G) >= k:

* engine A (forbidden minors): some variant of G_SP(k) is a d-minor of G;
* engine B (direct): some s-t path carries k edges forming a parallel set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .embed import is_d_minor, strip_to_subgraph_ops
from .errors import EngineDisagreement, PreconditionViolated
from .families import (
    VariantIndex,
    gsp_variants,
    parallel_graph,
    variant_from_index,
)
from .graph import DiGraph, Path, st_paths, validate_tdag
from .iso import is_isomorphic
from .ops import BackwardContract, Delete, ForwardContract, OpSequence, apply_minor_op
from .sets import CutCertificate, is_parallel, is_serial, max_parallel_set

ENGINES = ("a", "b", "both")


# -- parallel width ------------------------------------------------------------------------


PW_ENGINES = ("cuts", "minor", "sets")


def has_pw_at_least(g: DiGraph, k: int, engine: str = "cuts") -> bool:
    """PW(g) >= k.

    ``cuts`` scans minimal cuts directly; ``minor`` asks whether k parallel
    edges form a d-minor; ``sets`` tries every k-subset with is_parallel.  All
    three agree; the latter two are exponential in k and kept as cross-checks.
    """
    g = validate_tdag(g)
    if k <= 0:
        return True
    if g.m < k:
        return False
    if engine == "cuts":
        return len(max_parallel_set(g)) >= k
    if engine == "minor":
        return bool(is_d_minor(parallel_graph(k), g))
    if engine == "sets":
        return any(is_parallel(g, S) is not None for S in combinations([e.id for e in g.edges], k))
    raise ValueError(f"unknown engine {engine!r}")


def parallel_width(g: DiGraph, k: int | None = None, engine: str = "cuts"):
    """Decision (k given) or value (k omitted) of the parallel width."""
    g = validate_tdag(g)
    if k is not None:
        return has_pw_at_least(g, k, engine)
    if g.m == 0:
        return 0
    if engine == "cuts":
        return len(max_parallel_set(g))
    value = 1
    while value < g.m and has_pw_at_least(g, value + 1, engine):
        value += 1
    return value


# -- serial-parallel width ------------------------------------------------------------------


def engine_a(g: DiGraph, k: int):
    """(variant number, MinorResult) for the first variant of G_SP(k) that is a d-minor, or None."""
    for i, variant in enumerate(gsp_variants(k)):
        res = is_d_minor(variant, g)
        if res:
            return i, res
    return None


def engine_b(g: DiGraph, k: int):
    """(path, S, certificate) for the first serial-parallel k-set found, or None."""
    g = validate_tdag(g)
    seen = set()
    for path in st_paths(g):
        if len(path.edges) < k:
            continue
        for S in combinations(path.edges, k):
            key = frozenset(S)
            if key in seen:
                continue
            seen.add(key)
            cert = is_parallel(g, S)
            if cert is not None:
                return path, tuple(S), cert
    return None


def has_spw_at_least(g: DiGraph, k: int, engine: str = "both") -> bool:
    g = validate_tdag(g)
    if k <= 0:
        return True
    if g.m == 0:
        return False
    if k == 1:
        return True
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    a = b = None
    if engine in ("b", "both"):
        b = engine_b(g, k) is not None
    if engine in ("a", "both"):
        a = engine_a(g, k) is not None
    if engine == "both" and a != b:
        raise EngineDisagreement(f"SPW >= {k}: forbidden-minor engine says {a}, direct engine says {b}")
    return a if b is None else b


def serial_parallel_width(g: DiGraph, engine: str = "both") -> int:
    g = validate_tdag(g)
    if g.m == 0:
        return 0
    value = 1
    while 2 * (value + 1) <= g.n and has_spw_at_least(g, value + 1, engine):
        value += 1
    return value


def spw(g: DiGraph, k: int | None = None, engine: str = "both"):
    """Value of SPW (k omitted) or the decision SPW >= k."""
    if k is None:
        return serial_parallel_width(g, engine)
    return has_spw_at_least(g, k, engine)


def max_serial_parallel_set(g: DiGraph):
    """(path, S, certificate) for a largest serial-parallel set, via the direct engine."""
    g = validate_tdag(g)
    if g.m == 0:
        return None
    e = g.edges[0]
    path = is_serial(g, [e.id])
    best = (path, (e.id,), is_parallel(g, [e.id]))
    k = 2
    while 2 * k <= g.n:
        got = engine_b(g, k)
        if got is None:
            break
        best = got
        k += 1
    return best


# -- witnesses ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class SpwWitness:
    edges: tuple  # the serial-parallel set, in path order
    serial_path: Path
    cut_cert: CutCertificate
    minor_sequence: OpSequence
    variant: VariantIndex
    labels: dict  # ('a', i) / ('b', i) -> vertex id in the final graph

    @property
    def k(self) -> int:
        return self.variant.k

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "serial_path": {"vertices": list(self.serial_path.vertices),
                            "edges": list(self.serial_path.edges)},
            "cut_certificate": self.cut_cert.to_dict(),
            "variant": self.variant.to_dict(),
            "witness": self.minor_sequence.to_dict(),
        }


def extract_spw_minor_witness(g: DiGraph, S, path: Path, cert: CutCertificate) -> SpwWitness:
    """Reduce g to a G_SP(k) variant by d-minor steps, following S, its path and its trees.

    Along the path every vertex falls into a bag: the source bag up to a_1, the
    bag [x_i .. a_i] for i >= 2 where x_i is the first forward-tree vertex after
    b_{i-1}, the bag [b_i .. y_i] where y_i is the last backward-tree vertex
    before a_{i+1}, and the target bag from b_k.  Bags collapse to the variant's
    vertices.  This needs the trees to touch the path only inside the matching
    bags; a largest serial-parallel set always satisfies that, and other sets
    raise PreconditionViolated.
    """
    g = validate_tdag(g)
    pv, pe = list(path.vertices), list(path.edges)
    idx = {v: i for i, v in enumerate(pv)}
    if pv[0] != g.source or pv[-1] != g.target:
        raise PreconditionViolated("path must run from source to target")
    edges = sorted((g.edge(i) for i in set(S)), key=lambda e: idx.get(e.tail, -1))
    k = len(edges)
    if k < 2:
        raise PreconditionViolated("need at least two edges")
    for e in edges:
        if e.id not in pe:
            raise PreconditionViolated(f"edge {e.id} is not on the path")
    fpar = cert.forward_parent(g)
    bchild = cert.backward_child(g)
    ts = {g.source} | set(fpar)
    tt = {g.target} | set(bchild)
    if ts & tt:
        raise PreconditionViolated("trees are not vertex-disjoint")
    a = {i + 1: e.tail for i, e in enumerate(edges)}
    b = {i + 1: e.head for i, e in enumerate(edges)}
    if not all(a[i] in ts for i in a) or not all(b[i] in tt for i in b):
        raise PreconditionViolated("trees do not reach every endpoint of S")

    x = {1: g.source}
    y = {k: g.target}
    for i in range(2, k + 1):
        x[i] = next(v for v in pv[idx[b[i - 1]]: idx[a[i]] + 1] if v in ts)
    for i in range(1, k):
        y[i] = next(v for v in reversed(pv[idx[b[i]]: idx[a[i + 1]] + 1]) if v in tt)

    bag = {}
    for i in range(1, k + 1):
        lo = 0 if i == 1 else idx[x[i]]
        for v in pv[lo: idx[a[i]] + 1]:
            if v in tt:
                raise PreconditionViolated("backward tree meets a forward bag; use a largest set")
            bag[v] = ("a", i)
        hi = len(pv) - 1 if i == k else idx[y[i]]
        for v in pv[idx[b[i]]: hi + 1]:
            if v in ts:
                raise PreconditionViolated("forward tree meets a backward bag; use a largest set")
            bag[v] = ("b", i)
    for i in range(1, k):
        if idx[y[i]] >= idx[x[i + 1]]:
            raise PreconditionViolated("trees interleave along the path; use a largest set")

    # connectors: tree paths from each x_i up (and each y_i down) to the path
    s_off, t_off = set(), set()
    parent_of = {}
    for i in range(2, k + 1):
        v = x[i]
        while True:
            p = fpar[v][0]
            if p in idx:
                break
            s_off.add(p)
            v = p
        parent_of[i] = bag[p][1]
    child_of = {}
    for i in range(1, k):
        v = y[i]
        while True:
            c = bchild[v][0]
            if c in idx:
                break
            t_off.add(c)
            v = c
        child_of[i] = bag[c][1]

    keep = set(pe)
    for i in range(2, k + 1):
        v = x[i]
        while True:
            p, eid = fpar[v]
            keep.add(eid)
            if p in idx:
                break
            v = p
    for i in range(1, k):
        v = y[i]
        while True:
            c, eid = bchild[v]
            keep.add(eid)
            if c in idx:
                break
            v = c

    ops = strip_to_subgraph_ops(g, keep)
    ops += [BackwardContract(fpar[w][1]) for w in sorted(s_off, key=g.position.get)]
    ops += [ForwardContract(bchild[w][1]) for w in sorted(t_off, key=g.position.get)]
    for i in range(1, k):
        for j in range(idx[y[i]] + 1, idx[x[i + 1]]):
            ops.append(BackwardContract(pe[j - 1]))
    for i in range(1, k + 1):
        lo = 0 if i == 1 else idx[x[i]]
        for j in range(lo + 1, idx[a[i]] + 1):
            ops.append(BackwardContract(pe[j - 1]))
        hi = len(pv) - 1 if i == k else idx[y[i]]
        for j in range(idx[b[i]], hi):
            ops.append(ForwardContract(pe[j]))

    vi = VariantIndex(
        k,
        tuple(parent_of[i] for i in range(2, k + 1)),
        tuple(child_of[i] for i in range(1, k)),
    )
    labels = {("a", i): x[i] for i in x}
    labels.update({("b", i): y[i] for i in y})
    seq = OpSequence(g, tuple(ops), variant_from_index(vi))
    return SpwWitness(tuple(e.id for e in edges), path, cert, seq, vi, labels)


def _edge_between(g: DiGraph, u, v) -> int:
    return min(e.id for e in g.out_edges(u) if e.head == v)


def step_down(w: SpwWitness) -> SpwWitness:
    """Extend a witness for G_SP(K) by four d-minor steps to one for G_SP(K-1)."""
    K = w.k
    if K < 3:
        raise PreconditionViolated("cannot step below k = 2")
    lab = w.labels
    g = w.minor_sequence.replay()[-1]
    t = lab[("b", K)]
    aK, bK1 = lab[("a", K)], lab[("b", K - 1)]
    par = lab[("a", w.variant.forward[-1])]
    ops = []
    op = ForwardContract(_edge_between(g, aK, t))
    g = apply_minor_op(g, op)
    ops.append(op)
    op = Delete(_edge_between(g, bK1, t))
    g = apply_minor_op(g, op)
    ops.append(op)
    op = ForwardContract(_edge_between(g, bK1, t))
    g = apply_minor_op(g, op)
    ops.append(op)
    op = Delete(_edge_between(g, par, t))
    g = apply_minor_op(g, op)
    ops.append(op)

    vi = VariantIndex(K - 1, w.variant.forward[:-1],
                      tuple(min(c, K - 1) for c in w.variant.backward[:-1]))
    labels = {key: v for key, v in lab.items() if key[1] < K - 1 or key == ("a", K - 1)}
    labels[("b", K - 1)] = t
    seq = OpSequence(w.minor_sequence.start, w.minor_sequence.ops + tuple(ops), variant_from_index(vi))
    return SpwWitness(w.edges, w.serial_path, w.cut_cert, seq, vi, labels)


def spw_witness(g: DiGraph, k: int):
    """An SpwWitness ending at a G_SP(k) variant, or None when SPW(g) < k."""
    g = validate_tdag(g)
    if k < 2:
        raise PreconditionViolated("witnesses start at k = 2")
    best = max_serial_parallel_set(g)
    if best is None or len(best[1]) < k:
        return None
    path, S, cert = best
    w = extract_spw_minor_witness(g, S, path, cert)
    while w.k > k:
        w = step_down(w)
    return w


def witness_matches_variant(w: SpwWitness) -> bool:
    final = w.minor_sequence.replay()[-1]
    return is_isomorphic(final, variant_from_index(w.variant)) is not None

