from __future__ import annotations

import random

import pytest

from dminor.disjoint import check_solution, vertex_disjoint_paths_dag
from dminor.errors import CyclicInput, MalformedQuery
from dminor.graph import DiGraph
from dminor.oracle import oracle_disjoint_paths


def _random_dag(rng, n, p):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return DiGraph.from_edges(pairs, 0, n - 1, vertices=range(n))


def _random_query(rng, g, k):
    verts = list(g.vertices)
    rng.shuffle(verts)
    pairs = []
    for i in range(k):
        a, c = verts[2 * i], verts[2 * i + 1]
        pairs.append((min(a, c), max(a, c)))
    return pairs


def test_two_crossing_pairs():
    # 0->2->3 and 1->2->4 must share vertex 2
    g = DiGraph.from_edges([(0, 2), (1, 2), (2, 3), (2, 4)], 0, 4)
    assert vertex_disjoint_paths_dag(g, [(0, 3), (1, 4)]) is None
    g2 = DiGraph.from_edges([(0, 2), (1, 2), (2, 3), (2, 4), (1, 5), (5, 4)], 0, 4)
    sol = vertex_disjoint_paths_dag(g2, [(0, 3), (1, 4)])
    assert sol is not None and check_solution(g2, [(0, 3), (1, 4)], sol)
    assert sol[1].vertices == (1, 5, 4)


def test_empty_and_trivial_queries():
    g = DiGraph.from_edges([(0, 1)], 0, 1)
    assert len(vertex_disjoint_paths_dag(g, [])) == 0
    sol = vertex_disjoint_paths_dag(g, [(0, 0)])
    assert sol[0].edges == ()


def test_shared_endpoints_rejected():
    g = DiGraph.from_edges([(0, 1), (1, 2)], 0, 2)
    with pytest.raises(MalformedQuery):
        vertex_disjoint_paths_dag(g, [(0, 1), (1, 2)])
    with pytest.raises(MalformedQuery):
        vertex_disjoint_paths_dag(g, [(0, 9)])


def test_cyclic_rejected():
    g = DiGraph.from_edges([(0, 1), (1, 2), (2, 1)], 0, 2)
    with pytest.raises(CyclicInput):
        vertex_disjoint_paths_dag(g, [(0, 2)])


def test_stats_counts_states():
    g = DiGraph.from_edges([(0, 1), (1, 2)], 0, 2)
    stats = {}
    vertex_disjoint_paths_dag(g, [(0, 2)], stats)
    assert stats["states"] >= 2


def test_agrees_with_oracle():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randint(2, 9)
        g = _random_dag(rng, n, rng.choice([0.3, 0.5, 0.7]))
        k = rng.randint(1, min(3, n // 2))
        pairs = _random_query(rng, g, k)
        got = vertex_disjoint_paths_dag(g, pairs)
        want = oracle_disjoint_paths(g, pairs)
        assert (got is None) == (want is None), (g.to_dict(), pairs)
        if got is not None:
            assert check_solution(g, pairs, got)
