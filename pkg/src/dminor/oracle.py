"""Exhaustive reference implementations for small graphs.

Every oracle refuses inputs beyond its size guard (TooLarge) rather than
truncating, so an answer from here is always complete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .disjoint import PathSolution, check_query
from .errors import MalformedQuery, TooLarge
from .graph import DiGraph, Path, st_paths, validate_tdag
from .iso import canonical_form
from .ops import OpSequence, apply_minor_op, legal_minor_ops

MAX_CUT_EDGES = 20
MAX_MINOR_VERTICES = 8
MAX_MINOR_EDGES = 16
MAX_PATH_VERTICES = 16


@dataclass(frozen=True)
class EnumerationReport:
    st_paths: tuple
    minimal_cuts: tuple  # frozensets of edge ids, sorted by (size, ids)

    def to_dict(self) -> dict:
        return {
            "st_paths": [{"vertices": list(p.vertices), "edges": list(p.edges)} for p in self.st_paths],
            "minimal_cuts": [sorted(c) for c in self.minimal_cuts],
        }


@dataclass(frozen=True)
class WidthReport:
    pw: int
    spw: int
    max_serial: int
    max_concurrent: int

    def to_dict(self) -> dict:
        return {"pw": self.pw, "spw": self.spw, "max_serial": self.max_serial,
                "max_concurrent": self.max_concurrent}


def _masks(g: DiGraph, paths) -> tuple:
    bit = {e.id: 1 << i for i, e in enumerate(g.edges)}
    pmasks = []
    for p in paths:
        m = 0
        for eid in p.edges:
            m |= bit[eid]
        pmasks.append(m)
    return bit, pmasks


def _ids_of(g: DiGraph, mask: int) -> frozenset:
    return frozenset(e.id for i, e in enumerate(g.edges) if mask >> i & 1)


def oracle_enumerate(g: DiGraph) -> EnumerationReport:
    """All simple s-t paths and all minimal s-t cuts, by brute force."""
    if g.m > MAX_CUT_EDGES:
        raise TooLarge(f"{g.m} edges exceeds the cut-scan guard of {MAX_CUT_EDGES}")
    paths = tuple(st_paths(g))
    _, pmasks = _masks(g, paths)

    def is_cut(mask):
        return all(pm & mask for pm in pmasks)

    cuts = []
    for mask in range(1, 1 << g.m):
        if not is_cut(mask):
            continue
        if all(not is_cut(mask & ~(1 << i)) for i in range(g.m) if mask >> i & 1):
            cuts.append(_ids_of(g, mask))
    cuts.sort(key=lambda c: (len(c), sorted(c)))
    return EnumerationReport(paths, tuple(cuts))


def oracle_width(g: DiGraph) -> WidthReport:
    rep = oracle_enumerate(g)
    _, pmasks = _masks(g, rep.st_paths)
    _, cmasks = _masks(g, [Path((), tuple(c)) for c in rep.minimal_cuts])
    pw = max((len(c) for c in rep.minimal_cuts), default=0)
    spw = max((bin(pm & cm).count("1") for pm in pmasks for cm in cmasks), default=0)
    max_serial = max((len(p.edges) for p in rep.st_paths), default=0)
    return WidthReport(pw, spw, max_serial, _max_concurrent(g.m, pmasks))


def _concurrent(mask: int, pmasks) -> bool:
    i = 0
    while mask >> i:
        if mask >> i & 1:
            single = 1 << i
            if not any(pm & mask == single for pm in pmasks):
                return False
        i += 1
    return True


def _max_concurrent(m: int, pmasks) -> int:
    best = 0

    def grow(mask, size, start):
        nonlocal best
        best = max(best, size)
        for i in range(start, m):
            nxt = mask | 1 << i
            if _concurrent(nxt, pmasks):
                grow(nxt, size + 1, i + 1)

    grow(0, 0, 0)
    return best


def oracle_is_concurrent(g: DiGraph, S) -> bool:
    paths = list(st_paths(g))
    bit, pmasks = _masks(g, paths)
    mask = 0
    for eid in S:
        mask |= bit[eid]
    return _concurrent(mask, pmasks)


def oracle_is_parallel(g: DiGraph, S) -> bool:
    """S lies inside some minimal cut."""
    S = frozenset(S)
    return any(S <= c for c in oracle_enumerate(g).minimal_cuts)


def oracle_is_serial(g: DiGraph, S) -> bool:
    S = frozenset(S)
    return any(S <= set(p.edges) for p in st_paths(g))


# -- d-minor search ------------------------------------------------------------------------------


def _guard_minor(host: DiGraph):
    if host.n > MAX_MINOR_VERTICES or host.m > MAX_MINOR_EDGES:
        raise TooLarge(
            f"host has {host.n} vertices / {host.m} edges; guard is "
            f"{MAX_MINOR_VERTICES} / {MAX_MINOR_EDGES}"
        )


def oracle_minor_closure(host: DiGraph, min_vertices: int = 1, min_edges: int = 0) -> dict:
    """Every d-minor of host up to isomorphism: canonical form -> op tuple reaching it.

    Breadth first, so each recorded sequence is a shortest one, and ops are
    tried in edge-id order so the result is deterministic.  Graphs smaller
    than the given bounds are not expanded further.
    """
    host = validate_tdag(host)
    _guard_minor(host)
    start = canonical_form(host)
    seen = {start: ()}
    queue = deque([(host, ())])
    while queue:
        g, ops = queue.popleft()
        if g.m <= min_edges:
            continue
        for op in legal_minor_ops(g):
            h = apply_minor_op(g, op)
            if h.n < min_vertices or h.m < min_edges:
                continue
            code = canonical_form(h)
            if code in seen:
                continue
            seen[code] = ops + (op,)
            queue.append((h, ops + (op,)))
    return seen


class SmallMinorIndex:
    """Canonical forms of all d-minors with at most ``max_vertices`` vertices.

    Same literal search as :func:`oracle_minor_closure`, but the answer for
    every intermediate graph is memoized by canonical form, so sweeping many
    related hosts shares work.
    """

    def __init__(self, max_vertices: int):
        self.max_vertices = max_vertices
        self._memo: dict = {}

    def minors(self, g: DiGraph) -> frozenset:
        _guard_minor(g)
        return self._minors(g, canonical_form(g))

    def _minors(self, g: DiGraph, code) -> frozenset:
        got = self._memo.get(code)
        if got is not None:
            return got
        found = {code} if g.n <= self.max_vertices else set()
        for op in legal_minor_ops(g):
            h = apply_minor_op(g, op)
            found |= self._minors(h, canonical_form(h))
        result = frozenset(found)
        self._memo[code] = result
        return result


def oracle_d_minor(pattern: DiGraph, host: DiGraph):
    """OpSequence of d-minor steps from host to pattern, or None.  Literal search."""
    pattern = validate_tdag(pattern)
    host = validate_tdag(host)
    _guard_minor(host)
    if pattern.n > host.n or pattern.m > host.m:
        return None
    want = canonical_form(pattern)
    closure = oracle_minor_closure(host, pattern.n, pattern.m)
    if want not in closure:
        return None
    return OpSequence(host, closure[want], pattern)


# -- disjoint paths ---------------------------------------------------------------------------------


def oracle_disjoint_paths(g: DiGraph, pairs):
    """Backtracking over path tuples; no ordering tricks, no pruning beyond disjointness."""
    pairs = check_query(pairs)
    if g.n > MAX_PATH_VERTICES:
        raise TooLarge(f"{g.n} vertices exceeds the guard of {MAX_PATH_VERTICES}")
    for a, b in pairs:
        if not g.has_vertex(a) or not g.has_vertex(b):
            raise MalformedQuery(f"pair ({a}, {b}) names a vertex outside the graph")
    endpoints = {v for p in pairs for v in p}
    chosen: list = []
    used: set = set()

    def paths_between(a, b, banned):
        stack = [(a, (a,), ())]
        while stack:
            v, verts, edges = stack.pop()
            if v == b:
                yield Path(verts, edges)
                continue
            for e in reversed(g.out_edges(v)):
                w = e.head
                if w in verts or w in banned:
                    continue
                if w in endpoints and w != b:
                    continue
                stack.append((w, verts + (w,), edges + (e.id,)))

    def solve(i):
        if i == len(pairs):
            return True
        a, b = pairs[i]
        for p in paths_between(a, b, used):
            chosen.append(p)
            used.update(p.vertices)
            if solve(i + 1):
                return True
            chosen.pop()
            used.difference_update(p.vertices)
        return False

    if solve(0):
        return PathSolution(tuple(chosen))
    return None
