"""Named graph families: Braess, k parallel edges, the k-serial-parallel graphs and their variants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .errors import InvalidK
from .graph import DiGraph, Tdag, validate_tdag
from .iso import canonical_form, canonical_graph


@dataclass(frozen=True)
class VariantIndex:
    """Tree shapes of a G_SP(k) variant.

    ``forward[i - 2]`` is the parent index of a_i (1 means s); ``backward[i - 1]``
    is the child index of b_i (k means t).
    """

    k: int
    forward: tuple
    backward: tuple

    def to_dict(self) -> dict:
        return {"k": self.k, "forward": list(self.forward), "backward": list(self.backward)}


def braess() -> Tdag:
    s, a, b, t = 0, 1, 2, 3
    return validate_tdag(DiGraph.from_edges([(s, a), (s, b), (a, b), (a, t), (b, t)], s, t))


def parallel_graph(k: int) -> Tdag:
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"parallel_graph needs k >= 1, got {k!r}")
    return validate_tdag(DiGraph.from_edges([(0, 1)] * k, 0, 1))


def single_edge() -> Tdag:
    return parallel_graph(1)


def hourglass() -> Tdag:
    """s and t joined through a single middle vertex u by doubled edges: s=0, u=1, t=2."""
    return validate_tdag(DiGraph.from_edges([(0, 1), (0, 1), (1, 2), (1, 2)], 0, 2))


def hourglass_split() -> Tdag:
    """The hourglass with u forward-split into u -> v: s=0, u=1, v=2, t=3."""
    return validate_tdag(DiGraph.from_edges([(0, 1), (0, 1), (1, 2), (2, 3), (2, 3)], 0, 3))


def random_tdag(n: int, rng, extra: int | None = None, max_multiplicity: int = 1) -> Tdag:
    """A random TDAG on vertices 0..n-1 (in topological order), source 0, target n-1.

    Every inner vertex gets one in-edge from an earlier vertex and one out-edge to
    a later one; then ``extra`` further forward edges are added where the
    multiplicity bound allows.  ``rng`` is a :class:`random.Random`.
    """
    if n < 2:
        raise InvalidK("random_tdag needs n >= 2")
    count: dict = {}
    edges = []

    def add(u, v):
        if count.get((u, v), 0) < max_multiplicity:
            count[(u, v)] = count.get((u, v), 0) + 1
            edges.append((u, v))

    for v in range(1, n):
        add(rng.randrange(v), v)
    for u in range(n - 1):
        if not any(a == u for a, _ in count):
            add(u, rng.randrange(u + 1, n))
    if extra is None:
        extra = rng.randrange(n + 1)
    for _ in range(extra):
        u = rng.randrange(n - 1)
        add(u, rng.randrange(u + 1, n))
    return validate_tdag(DiGraph.from_edges(edges, 0, n - 1, vertices=range(n)))


def _check_k(k):
    if not isinstance(k, int) or k < 2:
        raise InvalidK(f"the serial-parallel family needs k >= 2, got {k!r}")


def gsp_labels(k: int) -> dict:
    """Vertex ids of G_SP(k) in spine order: s=0, b_1=1, a_2=2, b_2=3, ..., t=2k-1.

    Keys are 's', 't', ('a', i) for i=2..k and ('b', i) for i=1..k-1.  For
    convenience ('a', 1) is s and ('b', k) is t.
    """
    _check_k(k)
    lab = {"s": 0, "t": 2 * k - 1, ("a", 1): 0, ("b", k): 2 * k - 1}
    for i in range(1, k):
        lab[("b", i)] = 2 * i - 1
    for i in range(2, k + 1):
        lab[("a", i)] = 2 * i - 2
    return lab


def _build(k: int, forward: tuple, backward: tuple) -> Tdag:
    lab = gsp_labels(k)
    a = lambda i: lab[("a", i)]  # noqa: E731
    b = lambda i: lab[("b", i)]  # noqa: E731
    # the spine s, b1, a2, b2, ..., a_k, t carries the serial edges and the connectors
    spine = [(a(1), b(1))]
    for i in range(2, k + 1):
        spine.append((b(i - 1), a(i)))
        spine.append((a(i), b(i)))
    fwd = [(a(forward[i - 2]), a(i)) for i in range(2, k + 1)]
    bwd = [(b(i), b(backward[i - 1])) for i in range(1, k)]
    return validate_tdag(DiGraph.from_edges(spine + fwd + bwd, lab["s"], lab["t"]))


def gsp(k: int) -> Tdag:
    """G_SP(k): the spine plus the full forward star from s and backward star into t."""
    _check_k(k)
    return _build(k, (1,) * (k - 1), (k,) * (k - 1))


def serial_parallel_edges(g: DiGraph, k: int) -> list:
    """Edge ids of (s,b_1), (a_2,b_2), ..., (a_k,t) in a member of the G_SP(k) family."""
    lab = gsp_labels(k)
    want = [(lab[("a", i)], lab[("b", i)]) for i in range(1, k + 1)]
    out = []
    for tail, head in want:
        out.append(min(e.id for e in g.out_edges(tail) if e.head == head))
    return out


def increasing_trees(k: int, forward: bool = True) -> Iterator[tuple]:
    """Parent arrays (forward) or child arrays (backward) in lexicographic order."""
    if forward:
        ranges = [range(1, i) for i in range(2, k + 1)]
    else:
        ranges = [range(i + 1, k + 1) for i in range(1, k)]
    yield from product(*ranges)


def variant_indices(k: int) -> Iterator[VariantIndex]:
    _check_k(k)
    for f in increasing_trees(k, True):
        for b in increasing_trees(k, False):
            yield VariantIndex(k, f, b)


def gsp_variants(k: int) -> Iterator[Tdag]:
    for vi in variant_indices(k):
        yield _build(k, vi.forward, vi.backward)


def gsp_variant(k: int, index: int) -> Tdag:
    return _build(k, *_variant_index_at(k, index))


def _variant_index_at(k: int, index: int) -> tuple:
    _check_k(k)
    count = variant_count(k)
    if not 0 <= index < count:
        raise InvalidK(f"variant index {index} out of range 0..{count - 1}")
    for i, vi in enumerate(variant_indices(k)):
        if i == index:
            return vi.forward, vi.backward
    raise AssertionError("unreachable")


def variant_from_index(vi: VariantIndex) -> Tdag:
    return _build(vi.k, tuple(vi.forward), tuple(vi.backward))


def variant_number(vi: VariantIndex) -> int:
    for i, other in enumerate(variant_indices(vi.k)):
        if other.forward == tuple(vi.forward) and other.backward == tuple(vi.backward):
            return i
    raise InvalidK(f"not a variant of G_SP({vi.k}): {vi}")


def variant_count(k: int) -> int:
    _check_k(k)
    f = 1
    for i in range(2, k):
        f *= i
    return f * f


def enumerate_tdags(n: int, max_multiplicity: int = 1) -> list:
    """All TDAGs on n vertices up to isomorphism, as canonical graphs.

    Vertices 0..n-1 are taken in topological order, so every TDAG appears; with
    ``max_multiplicity`` > 1 parallel edges are allowed up to that count per pair.
    """
    if n < 1:
        raise InvalidK("need at least one vertex")
    if n == 1:
        return [validate_tdag(DiGraph((0,), (), 0, 0))]
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mult in product(range(max_multiplicity + 1), repeat=len(pairs)):
        indeg = [0] * n
        outdeg = [0] * n
        edges = []
        for (i, j), c in zip(pairs, mult):
            if c:
                outdeg[i] += c
                indeg[j] += c
                edges.extend([(i, j)] * c)
        if any(indeg[v] == 0 for v in range(1, n)) or any(outdeg[v] == 0 for v in range(n - 1)):
            continue
        g = DiGraph.from_edges(edges, 0, n - 1, vertices=range(n))
        code = canonical_form(g)
        if code not in seen:
            seen[code] = g
    return [validate_tdag(canonical_graph(g)) for _, g in sorted(seen.items())]
