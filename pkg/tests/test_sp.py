from __future__ import annotations

from conftest import tdags_up_to
from dminor.embed import is_d_minor
from dminor.families import braess, gsp, hourglass, hourglass_split, parallel_graph
from dminor.iso import is_isomorphic
from dminor.sp import is_series_parallel


def test_braess_is_not_series_parallel():
    assert is_series_parallel(braess()) is None
    assert is_series_parallel(gsp(3)) is None


def test_parallel_edges():
    d = is_series_parallel(parallel_graph(3))
    assert d.kind == "parallel" and sorted(d.leaves()) == [0, 1, 2]


def test_hourglass_split_decomposes():
    g = hourglass_split()
    d = is_series_parallel(g)
    assert d.kind == "series" and len(d.children) == 3
    assert is_isomorphic(d.recompose(), g) is not None
    assert sorted(d.leaves()) == [e.id for e in g.edges]


def test_to_dict_nesting():
    d = is_series_parallel(hourglass())
    assert d.to_dict() == {"series": [{"parallel": [{"edge": 0}, {"edge": 1}]},
                                      {"parallel": [{"edge": 2}, {"edge": 3}]}]}


def test_recompose_everywhere_small():
    for g in tdags_up_to(5):
        d = is_series_parallel(g)
        if d is not None:
            assert is_isomorphic(d.recompose(), g) is not None


def test_sp_iff_no_braess_minor_small():
    b = braess()
    for g in tdags_up_to(5):
        if g.m == 0:
            continue
        assert (is_series_parallel(g) is not None) == (not is_d_minor(b, g))
