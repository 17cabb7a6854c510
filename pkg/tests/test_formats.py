from __future__ import annotations

import json

import pytest

from dminor.errors import GraphError
from dminor.families import braess, gsp
from dminor.formats import dump_json, export_dot, graph_from_json, graph_to_json, load_graph, parse_dot


def test_json_round_trip(tmp_path):
    g = gsp(3)
    path = tmp_path / "g.json"
    dump_json(g.to_dict(), str(path))
    assert load_graph(str(path)).to_dict() == g.to_dict()
    assert graph_from_json(graph_to_json(g)).to_dict() == g.to_dict()


def test_json_is_sorted():
    text = graph_to_json(braess())
    assert text.index('"edges"') < text.index('"source"') < text.index('"target"')


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ nope")
    with pytest.raises(GraphError):
        load_graph(str(path))
    with pytest.raises(GraphError):
        load_graph(str(tmp_path / "missing.json"))


def test_dot_export_shape():
    text = export_dot(braess())
    lines = text.strip().splitlines()
    assert lines[0] == "digraph G {" and lines[-1] == "}"
    assert sum("->" in ln for ln in lines) == 5
    assert "0 [shape=doublecircle];" in text and "1 [shape=circle];" in text


def test_dot_edge_lines_of_gsp5():
    assert sum("->" in ln for ln in export_dot(gsp(5)).splitlines()) == 17


def test_dot_round_trip():
    for g in (braess(), gsp(4)):
        assert parse_dot(export_dot(g)).to_dict() == g.to_dict()


def test_to_dict_is_json_ready():
    assert json.loads(json.dumps(gsp(2).to_dict()))["source"] == 0
