from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dminor.cli import run
from dminor.families import braess, gsp, hourglass, hourglass_split
from dminor.formats import dump_json


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in [("braess", braess()), ("gsp3", gsp(3)), ("left", hourglass()), ("right", hourglass_split())]:
        path = tmp_path / f"{name}.json"
        dump_json(g.to_dict(), str(path))
        out[name] = str(path)
    out["dir"] = tmp_path
    return out


def _run(capsys, argv):
    code = run(argv)
    text = capsys.readouterr().out
    return code, text


def _json(capsys, argv):
    code, text = _run(capsys, argv)
    return code, json.loads(text)


def test_width_braess(capsys, files):
    code, rep = _json(capsys, ["width", files["braess"]])
    assert code == 0
    assert (rep["pw"], rep["spw"], rep["longest"]) == (3, 2, 3)


def test_width_oracle(capsys, files):
    code, rep = _json(capsys, ["width", files["braess"], "--oracle", "--spw"])
    assert rep == {"command": "width", "engine": "oracle", "spw": 2}


@pytest.mark.parametrize("engine", ["a", "b", "both"])
def test_width_engines(capsys, files, engine):
    _, rep = _json(capsys, ["width", files["gsp3"], "--spw", "--engine", engine])
    assert rep["spw"] == 3


def test_width_witness_then_replay(capsys, files):
    wpath = str(files["dir"] / "w.json")
    code, rep = _json(capsys, ["width", files["gsp3"], "--witness", wpath])
    assert code == 0 and rep["variant"]["k"] == 3
    code, rep = _json(capsys, ["reduce-witness", wpath, "--verify"])
    assert code == 0 and rep["valid"]


def test_minor_exit_codes(capsys, files):
    cert = str(files["dir"] / "c.json")
    code, rep = _json(capsys, ["minor", files["braess"], files["gsp3"], "--certificate", cert])
    assert code == 0 and rep["minor"]
    code, rep = _json(capsys, ["reduce-witness", cert])
    assert code == 0 and rep["kind"] == "minor"
    code, rep = _json(capsys, ["minor", files["gsp3"], files["braess"]])
    assert code == 1 and not rep["minor"]


def test_minor_hourglass_pair(capsys, files):
    code, rep = _json(capsys, ["minor", files["left"], files["right"]])
    assert code == 0 and rep["h_embedded"] is False
    code, rep = _json(capsys, ["minor", files["left"], files["right"], "--oracle"])
    assert code == 0


def test_tampered_witness(capsys, files):
    cert = str(files["dir"] / "c.json")
    run(["minor", files["braess"], files["gsp3"], "--certificate", cert])
    capsys.readouterr()
    data = json.loads(open(cert).read())
    data["ops"].append({"op": "delete", "edge": 0})
    with open(cert, "w") as fh:
        json.dump(data, fh)
    code, rep = _json(capsys, ["reduce-witness", cert, "--verify"])
    assert code == 1 and rep["failed_step"] == len(data["ops"])


def test_check_set(capsys, files):
    code, rep = _json(capsys, ["check-set", files["braess"], "--edges", "0,4", "--property", "serial-parallel"])
    assert code == 0 and rep["verdict"]
    code, rep = _json(capsys, ["check-set", files["left"], "--edges", "0,2", "--property", "parallel"])
    assert code == 1
    code, rep = _json(capsys, ["check-set", files["left"], "--edges", "0,2", "--property", "concurrent", "--oracle"])
    assert code == 0


def test_gen_and_dot(capsys):
    code, text = _run(capsys, ["gen", "gsp", "5", "--dot"])
    assert code == 0 and sum("->" in ln for ln in text.splitlines()) == 17
    code, rep = _json(capsys, ["gen", "gsp-variant", "3", "2"])
    assert code == 0 and len(rep["vertices"]) == 6


def test_validate_and_info(capsys, files, tmp_path):
    code, rep = _json(capsys, ["validate", files["braess"]])
    assert code == 0 and rep["tdag"]
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"vertices": [0, 1, 2], "source": 0, "target": 2,
                               "edges": [{"id": 0, "tail": 0, "head": 1}, {"id": 1, "tail": 1, "head": 0},
                                         {"id": 2, "tail": 1, "head": 2}]}))
    code, rep = _json(capsys, ["validate", str(cyc)])
    assert code == 1 and rep["reason"].startswith("CycleFound")
    code, rep = _json(capsys, ["info", files["left"]])
    assert rep["hubs"] == [1] and rep["series_parallel"]


def test_oracle_enumerate(capsys, files):
    code, rep = _json(capsys, ["oracle", "enumerate", files["braess"]])
    assert len(rep["minimal_cuts"]) == 4


def test_input_errors(capsys, files, tmp_path):
    assert run(["width", str(tmp_path / "nope.json")]) == 2
    assert run(["gen", "gsp"]) == 2
    assert run(["gen", "gsp", "1"]) == 2
    assert run(["check-set", files["braess"], "--edges", "0,x", "--property", "serial"]) == 2
    assert run(["check-set", files["braess"], "--edges", "77", "--property", "serial"]) == 2
    assert run(["--jobs", "0", "info", files["braess"]]) == 2
    assert run(["bogus"]) == 2


def test_disagreement_exit_code(capsys, files, monkeypatch):
    import dminor.width as width

    monkeypatch.setattr(width, "engine_a", lambda g, k: None)
    assert run(["width", files["braess"], "--spw"]) == 3


def test_output_is_deterministic(capsys, files):
    first = _run(capsys, ["width", files["gsp3"]])
    second = _run(capsys, ["--jobs", "4", "width", files["gsp3"]])
    assert first == second


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "dminor", "width", files["braess"], "--pw"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pw"] == 3


def test_pipeline_through_stdin():
    gen = subprocess.run([sys.executable, "-m", "dminor", "gen", "gsp", "3"], capture_output=True, text=True)
    proc = subprocess.run([sys.executable, "-m", "dminor", "width", "-", "--spw"],
                          input=gen.stdout, capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["spw"] == 3


def test_braess_not_in_series_parallel_host(capsys, files):
    code, rep = _json(capsys, ["minor", files["braess"], files["right"]])
    assert code == 1 and rep["minor"] is False


def test_dot_single_vertex(capsys, tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"vertices": [0], "edges": [], "source": 0, "target": 0}))
    code, text = _run(capsys, ["dot", str(path)])
    assert code == 0 and "->" not in text and "0 [shape=doublecircle];" in text
