from __future__ import annotations

from itertools import combinations

from conftest import random_tdags, tdags_up_to
from dminor.families import braess, gsp, hourglass
from dminor.graph import DiGraph, st_paths
from dminor.oracle import oracle_is_concurrent, oracle_is_parallel, oracle_is_serial
from dminor.sets import (
    EdgeSet,
    check_cut_certificate,
    is_concurrent,
    is_parallel,
    is_serial,
    is_serial_parallel,
    longest_path,
    max_serial_general,
)


def test_braess_sets(b):
    assert is_serial(b, [0, 4]).edges == (0, 2, 4)
    assert is_serial(b, [1, 3]) is None
    assert is_parallel(b, [0, 4]) is not None
    assert is_parallel(b, [0, 2]) is None
    assert is_serial_parallel(b, [0, 4]) is not None
    assert is_concurrent(b, [0, 1])


def test_hourglass_concurrent_not_parallel():
    g = hourglass()
    assert is_concurrent(g, [0, 2])
    assert is_parallel(g, [0, 2]) is None


def test_certificates_check(b):
    cert = is_parallel(b, [1, 2, 3])
    assert cert is not None and check_cut_certificate(b, [1, 2, 3], cert)
    assert cert.to_dict()["forward_tree"] == [0]


def test_edge_set_wrapper(b):
    S = EdgeSet.of(b, [4, 0])
    assert list(S) == [0, 4] and len(S) == 2
    assert is_parallel(b, S) is not None


def test_empty_set():
    g = gsp(2)
    assert is_serial(g, []) is not None
    assert is_parallel(g, []) is not None
    assert is_concurrent(g, [])


def _all_subsets(g, limit=4):
    ids = [e.id for e in g.edges]
    for k in range(1, min(limit, len(ids)) + 1):
        yield from combinations(ids, k)


def test_against_oracle_exhaustive_small():
    for g in tdags_up_to(5):
        for S in _all_subsets(g):
            assert (is_serial(g, S) is not None) == oracle_is_serial(g, S)
            assert is_concurrent(g, S) == oracle_is_concurrent(g, S)
            cert = is_parallel(g, S)
            assert (cert is not None) == oracle_is_parallel(g, S), (g.to_dict(), S)
            if cert is not None:
                assert check_cut_certificate(g, S, cert)


def test_against_oracle_random_multigraphs():
    for g in random_tdags(60, seed=8, hi=6, max_multiplicity=2):
        for S in _all_subsets(g, 3):
            assert (is_parallel(g, S) is not None) == oracle_is_parallel(g, S), (g.to_dict(), S)


def test_parallel_implies_concurrent():
    for g in random_tdags(40, seed=4, hi=7):
        for S in _all_subsets(g, 3):
            if is_parallel(g, S) is not None:
                assert is_concurrent(g, S)


def test_longest_path_matches_enumeration():
    for g in random_tdags(200, seed=6, hi=9, max_multiplicity=2):
        best = max(len(p.edges) for p in st_paths(g))
        p = longest_path(g)
        assert len(p.edges) == best and p.start == g.source and p.end == g.target


def test_longest_path_tie_break():
    g = DiGraph.from_edges([(0, 1), (0, 1)], 0, 1)
    assert longest_path(g).edges == (0,)


def test_max_serial_general_on_cycles():
    g = DiGraph.from_edges([(0, 1), (0, 2), (1, 2), (2, 1), (1, 3), (2, 3)], 0, 3)
    p = max_serial_general(g, 3)
    assert p is not None and len(p.edges) == 3
    assert max_serial_general(g, 4) is None
