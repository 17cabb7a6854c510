"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

from __future__ import annotations

import random
import sys
import time
from functools import lru_cache
from itertools import chain, combinations

import pytest

from dminor.disjoint import check_solution, vertex_disjoint_paths_dag
from dminor.embed import is_d_embedded, is_d_minor, is_h_embedded
from dminor.families import (
    braess,
    enumerate_tdags,
    gsp_variants,
    hourglass,
    hourglass_split,
    random_tdag,
    variant_count,
    variant_from_index,
)
from dminor.graph import is_tdag, st_paths, validate_tdag
from dminor.iso import canonical_form, is_isomorphic
from dminor.ops import (
    AddEdge,
    BackwardSplit,
    ForwardSplit,
    Subdivide,
    TerminalExtend,
    apply_op,
    legal_minor_ops,
    verify_witness,
)
from dminor.oracle import SmallMinorIndex, oracle_disjoint_paths, oracle_enumerate, oracle_is_concurrent, oracle_width
from dminor.sets import is_concurrent, is_parallel, longest_path
from dminor.sp import is_series_parallel
from dminor.width import engine_a, engine_b, has_spw_at_least, parallel_width, serial_parallel_width, spw_witness

# graphs checked against the width bound by criterion 10, filled in by the other criteria
TOUCHED: dict = {}

# criterion lines, repeated in the terminal summary by conftest.py
REPORT_LINES: list = []


def _touch(g, value):
    TOUCHED[canonical_form(g)] = (g.n, value)


def _report(n: int, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.time() - started:.1f}s)"
    REPORT_LINES.append(line)
    out = getattr(sys, "__stdout__", None) or sys.stdout
    out.write(line + "\n")
    out.flush()


@lru_cache(maxsize=None)
def _all_small(max_n: int) -> tuple:
    return tuple(g for n in range(1, max_n + 1) for g in enumerate_tdags(n))


# -- 1 ----------------------------------------------------------------------------------------


def test_c01_braess_widths():
    t = time.time()
    g = braess()
    cuts = {frozenset(c) for c in oracle_enumerate(g).minimal_cuts}
    # s->a = 0, s->b = 1, a->b = 2, a->t = 3, b->t = 4
    want = {frozenset({0, 1}), frozenset({0, 4}), frozenset({3, 4}), frozenset({1, 2, 3})}
    s, p = serial_parallel_width(g), parallel_width(g)
    _touch(g, s)
    ok = s == 2 and p == 3 and cuts == want and time.time() - t < 1
    _report(1, ok, f"spw={s} pw={p} cuts={sorted(sorted(c) for c in cuts)}", t)
    assert ok


# -- 2 ----------------------------------------------------------------------------------------


def test_c02_hourglass_pair():
    t = time.time()
    left, right = hourglass(), hourglass_split()
    widths = [(parallel_width(g), serial_parallel_width(g)) for g in (left, right)]
    for g, (_, s) in zip((left, right), widths):
        _touch(g, s)
    d_emb = is_d_embedded(left, right) is not None
    h_emb = is_h_embedded(left, right) is not None
    ok = widths == [(2, 1), (2, 1)] and d_emb and not h_emb and time.time() - t < 1
    _report(2, ok, f"(pw, spw)={widths} d-embedded={d_emb} h-embedded={h_emb}", t)
    assert ok


# -- 3 ----------------------------------------------------------------------------------------


def test_c03_gsp_family():
    t = time.time()
    counts = {k: len(list(gsp_variants(k))) for k in (2, 3)}
    bad = []
    for k in (2, 3):
        for i, v in enumerate(gsp_variants(k)):
            got = (serial_parallel_width(v, "a"), serial_parallel_width(v, "b"), oracle_width(v).spw)
            _touch(v, got[2])
            if got != (k, k, k):
                bad.append((k, i, got))
    iso = is_isomorphic(next(iter(gsp_variants(2))), braess()) is not None
    ok = counts == {2: 1, 3: 4} and counts[3] == variant_count(3) and iso and not bad and time.time() - t < 30
    _report(3, ok, f"variant counts={counts} gsp(2)~braess={iso} wrong={bad}", t)
    assert ok


# -- 4 ----------------------------------------------------------------------------------------


def _patterns() -> list:
    simple = list(_all_small(4))
    # every TDAG with a repeated edge on at most 3 vertices and multiplicity at most 2
    multi = [g for n in (2, 3) for g in enumerate_tdags(n, 2)
             if g.m != len({(e.tail, e.head) for e in g.edges})]
    return simple + multi


def test_c04_embedding_matches_literal_minor_search():
    t = time.time()
    hosts = _all_small(6)
    patterns = _patterns()
    index = SmallMinorIndex(4)
    pairs = bad = 0
    first = None
    for h in hosts:
        minors = index.minors(h)
        for p in patterns:
            pairs += 1
            fast = is_d_embedded(p, h) is not None
            slow = canonical_form(p) in minors
            if fast != slow:
                bad += 1
                first = first or (h.to_dict(), p.to_dict(), fast, slow)
    ok = bad == 0 and time.time() - t < 600
    _report(4, ok, f"{len(hosts)} hosts x {len(patterns)} patterns = {pairs} pairs, disagreements={bad}", t)
    assert ok, first


# -- 5 ----------------------------------------------------------------------------------------


def test_c05_width_minor_round_trip():
    t = time.time()
    rng = random.Random(5005)
    failures = []
    positives = 0
    for trial in range(200):
        g = random_tdag(rng.randint(2, 8), rng, max_multiplicity=rng.choice([1, 1, 2]))
        for k in (2, 3):
            direct = engine_b(g, k) is not None
            hit = engine_a(g, k)
            if direct != (hit is not None):
                failures.append((trial, k, "engines", direct))
                continue
            if not direct:
                continue
            positives += 1
            w = spw_witness(g, k)
            check = verify_witness(w.minor_sequence)
            final = w.minor_sequence.replay()[-1]
            if not check or is_isomorphic(final, variant_from_index(w.variant)) is None:
                failures.append((trial, k, "witness", check.reason))
        _touch(g, serial_parallel_width(g, "b"))
    ok = not failures and time.time() - t < 300
    _report(5, ok, f"200 graphs, {positives} positive (g, k) pairs with verified witnesses, failures={failures[:3]}", t)
    assert ok


# -- 6 ----------------------------------------------------------------------------------------


def _random_embed_op(g, rng):
    kind = rng.randrange(5)
    if kind == 0:
        order = list(g.topo_order)
        i, j = sorted(rng.sample(range(len(order)), 2))
        return AddEdge(order[i], order[j])
    if kind in (1, 2):
        cands = [v for v in g.vertices if v != (g.target if kind == 1 else g.source)]
        v = rng.choice(cands)
        side = g.out_edges(v) if kind == 1 else g.in_edges(v)
        moved = rng.sample([e.id for e in side], rng.randint(1, len(side)))
        return (ForwardSplit if kind == 1 else BackwardSplit)(v, moved)
    if kind == 3:
        return Subdivide(rng.choice(g.edges).id)
    return TerminalExtend(rng.choice(["source", "target"]))


def test_c06_closure_under_ops():
    t = time.time()
    rng = random.Random(6006)
    done = bad = 0
    g = None
    while done < 10_000:
        if g is None or g.n < 2 or g.n > 14 or rng.random() < 0.05:
            g = random_tdag(rng.randint(2, 8), rng, max_multiplicity=2)
        if rng.random() < 0.5:
            legal = legal_minor_ops(g)
            if not legal:
                g = None
                continue
            op = rng.choice(legal)
        else:
            op = _random_embed_op(g, rng)
        h = apply_op(g.as_digraph(), op)
        done += 1
        if not is_tdag(h):
            bad += 1
            g = None
            continue
        g = validate_tdag(h)
    ok = bad == 0 and time.time() - t < 60
    _report(6, ok, f"{done} random legal ops, results failing validate_tdag={bad}", t)
    assert ok


# -- 7 ----------------------------------------------------------------------------------------


def test_c07_splits_preserve_path_counts():
    t = time.time()
    rng = random.Random(7007)
    bad = 0
    for _ in range(1000):
        g = random_tdag(rng.randint(2, 8), rng, max_multiplicity=rng.choice([1, 2]))
        forward = rng.random() < 0.5
        cands = [v for v in g.vertices if v != (g.target if forward else g.source)]
        v = rng.choice(cands)
        side = [e.id for e in (g.out_edges(v) if forward else g.in_edges(v))]
        moved = rng.sample(side, rng.randint(1, len(side)))
        h = apply_op(g, (ForwardSplit if forward else BackwardSplit)(v, moved))
        if len(list(st_paths(h))) != len(list(st_paths(g))):
            bad += 1
    ok = bad == 0
    _report(7, ok, f"1000 random splits, path-count changes={bad}", t)
    assert ok


# -- 8 ----------------------------------------------------------------------------------------


def _lemma7_corpus() -> list:
    graphs = [g for g in _all_small(6) if g.m <= 12]
    rng = random.Random(8008)
    sampled = 0
    while sampled < 300:
        g = random_tdag(7, rng, max_multiplicity=rng.choice([1, 2]))
        if g.m <= 12:
            graphs.append(g)
            sampled += 1
    return graphs


def _subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(1, len(items) + 1))


def test_c08_parallel_implies_concurrent():
    t = time.time()
    checked = bad = 0
    for g in _lemma7_corpus():
        if g.m == 0:
            continue
        parallel_sets = set()
        for cut in oracle_enumerate(g).minimal_cuts:
            parallel_sets.update(frozenset(S) for S in _subsets(cut))
        for S in parallel_sets:
            checked += 1
            if not (is_concurrent(g, S) and oracle_is_concurrent(g, S)):
                bad += 1
        # the library's parallel test must find exactly these sets among small subsets
        for S in combinations([e.id for e in g.edges], 2):
            if (is_parallel(g, S) is not None) != (frozenset(S) in parallel_sets):
                bad += 1
    ok = bad == 0
    _report(8, ok, f"{checked} parallel sets on graphs with <= 7 vertices, <= 12 edges; violations={bad}", t)
    assert ok


# -- 9 ----------------------------------------------------------------------------------------


def test_c09_dsp_triple():
    t = time.time()
    b = braess()
    graphs = [g for g in _all_small(6) if g.m]
    bad = []
    for g in graphs:
        dsp = is_series_parallel(g) is not None
        no_braess = not is_d_minor(b, g)
        width_one = not has_spw_at_least(g, 2)
        _touch(g, 1 if width_one else serial_parallel_width(g))
        if not dsp == no_braess == width_one:
            bad.append(g.to_dict())
    ok = not bad
    _report(9, ok, f"{len(graphs)} TDAGs with <= 6 vertices, disagreements={len(bad)}", t)
    assert ok, bad[:2]


# -- 10 ---------------------------------------------------------------------------------------


def test_c10_width_bound():
    t = time.time()
    bad = 0
    # also ask the decision one past the bound on the exhaustive corpus
    for g in _all_small(6):
        if g.m and has_spw_at_least(g, g.n // 2 + 1):
            bad += 1
    for n, value in TOUCHED.values():
        if value > n // 2:
            bad += 1
    ok = bad == 0
    _report(10, ok, f"{len(TOUCHED)} distinct graphs touched by this suite plus all TDAGs <= 6 vertices, violations={bad}", t)
    assert ok


# -- 11 ---------------------------------------------------------------------------------------


def test_c11_solver_certification():
    t = time.time()
    rng = random.Random(1111)
    bad = positives = 0
    for _ in range(1000):
        n = rng.randint(2, 10)
        g = random_tdag(n, rng, max_multiplicity=rng.choice([1, 2]))
        verts = list(g.vertices)
        rng.shuffle(verts)
        k = rng.randint(1, min(3, n // 2))
        pairs = []
        for i in range(k):
            a, c = verts[2 * i], verts[2 * i + 1]
            pairs.append((min(a, c), max(a, c)))
        got = vertex_disjoint_paths_dag(g, pairs)
        want = oracle_disjoint_paths(g, pairs)
        if (got is None) != (want is None) or (got is not None and not check_solution(g, pairs, got)):
            bad += 1
        positives += got is not None
        best = max(len(p.edges) for p in st_paths(g))
        if len(longest_path(g).edges) != best:
            bad += 1
    ok = bad == 0
    _report(11, ok, f"1000 random DAGs (<= 10 vertices, <= 3 pairs, {positives} solvable), disagreements={bad}", t)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
