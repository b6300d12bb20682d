import json
import subprocess
import sys

import pytest

from markovsurf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tree_dot(capsys):
    code, out, _ = run(capsys, "tree", "--depth", "2", "--format", "dot")
    assert code == 0
    assert out.count("[label=") == 3 and out.count(" -- ") == 2


def test_tree_json(capsys):
    code, out, _ = run(capsys, "tree", "--depth", "0")
    assert json.loads(out)["levels"] == [{"depth": 0, "vertices": [["1", "1", "1"]]}]
    code, out, _ = run(capsys, "tree", "--depth", "3", "--edges")
    edges = [e for L in json.loads(out)["levels"] for e in L["edges"]]
    assert {"k1": "2", "k2": "5", "l1": "1", "l2": "29",
            "triples": [["1", "2", "5"], ["2", "5", "29"]]} in edges


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tree", "--depth", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["tree"])
    assert exc.value.code == 2


def test_surface_triple(capsys):
    code, out, _ = run(capsys, "surface", "--triple", "1", "1", "2")
    d = json.loads(out)
    assert code == 0 and d["weights"] == ["1", "1", "4"] and d["kSquared"] == {"num": "9", "den": "1"}
    code, _, err = run(capsys, "surface", "--triple", "1", "2", "4")
    assert code == 2 and "NotMarkov" in err


def test_surface_edge(capsys):
    code, out, _ = run(capsys, "surface", "--edge", "5", "29")
    d = json.loads(out)
    assert code == 0
    assert (d["edge"]["l1"], d["edge"]["l2"]) == ("2", "433")
    assert len(d["centralFibers"]) == 2 and "Z2" in d["coverings"]
    code, _, err = run(capsys, "surface", "--edge", "1", "3")
    assert code == 2 and "NotMarkovPair" in err


def test_surface_diagrams(capsys):
    code, out, _ = run(capsys, "surface", "--edge", "2", "5", "--format", "text")
    assert code == 0 and "(isomorphism)" in out
    code, out, _ = run(capsys, "surface", "--edge", "2", "5", "--format", "dot")
    assert out.startswith("digraph")


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_classify_files(capsys, tmp_path):
    f = _write(tmp_path, "a.json", {"l1": "2", "l2": "3", "d0": "-1", "d1": "1", "d2": "1"})
    code, out, _ = run(capsys, "classify", "--matrix", f)
    assert code == 1 and json.loads(out)["kSquared"] == {"num": "5", "den": "1"}

    f = _write(tmp_path, "b.json", {"matrix": [[-1, -1, 1, 0], [-1, -1, 0, 29], [0, -1, 1, -4]]})
    code, out, _ = run(capsys, "classify", "--matrix", f)
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "MarkovCstar" and d["isToric"] is True

    f = _write(tmp_path, "c.json", "{not json")
    code, _, err = run(capsys, "classify", "--matrix", f)
    assert code == 2 and "error" in err

    code, _, _ = run(capsys, "classify", "--matrix", str(tmp_path / "missing.json"))
    assert code == 2

    f = _write(tmp_path, "d.json", [[1, 0, -1], [0, 1, -1]])
    code, out, _ = run(capsys, "classify", "--matrix", f)
    assert code == 0 and json.loads(out)["verdict"] == "ToricMarkov"

    f = _write(tmp_path, "e.json", {"matrix": [[1, 2, -1], [0, 0, 0]]})
    code, _, err = run(capsys, "classify", "--matrix", f)
    assert code == 2 and "NotPositivelySpanning" in err


@pytest.mark.parametrize("argv", [
    ("surface", "--edge", "5", "29"),
    ("surface", "--edge", "1", "1"),
    ("surface", "--triple", "2", "5", "29"),
])
def test_surface_output_round_trips_through_classify(capsys, tmp_path, argv):
    _, out, _ = run(capsys, *argv)
    f = _write(tmp_path, "s.json", out)
    code, out2, _ = run(capsys, "classify", "--matrix", f)
    v = json.loads(out2)
    assert code == 0
    if "--edge" in argv:
        assert v["verdict"] == "MarkovCstar"
        assert v["edge"]["k1"] == json.loads(out)["edge"]["k1"]
    else:
        assert v["verdict"] == "ToricMarkov" and v["markovTriple"] == ["2", "5", "29"]


def test_surface_of_matrix_file(capsys, tmp_path):
    f = _write(tmp_path, "m.json", {"l1": "2", "l2": "3", "d0": "-1", "d1": "1", "d2": "1"})
    code, out, _ = run(capsys, "surface", "--matrix", f)
    assert code == 0 and json.loads(out)["kind"] == "cstarSurface"
    f = _write(tmp_path, "n.json", {"l1": "2", "l2": "433", "d0": "-1", "d1": "1", "d2": "204"})
    code, out, _ = run(capsys, "surface", "--matrix", f)
    assert json.loads(out)["kind"] == "markovCstarSurface"


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "diophantine", "--bound", "1000")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["details"]["solutions"] == "5"
    code, out, _ = run(capsys, "verify", "tree", "--depth", "5")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "cones", "--nmax", "30")
    assert code == 0
    code, out, _ = run(capsys, "verify", "case-d", "--l0max", "10", "--d0max", "10", "--d1max", "10")
    assert code == 0
    code, out, _ = run(capsys, "verify", "delta", "--bound", "1000", "--grid", "100")
    assert code == 0
    code, out, _ = run(capsys, "verify", "fibers", "--lmax", "6")
    assert code == 0


def test_verify_failure_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "fibers", "--lmax", "5", "--tol", "0")
    assert code == 1 and not json.loads(out)["passed"]


def test_output_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "markovsurf", "surface", "--edge", "5", "29"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_log_level_from_environment():
    cmd = [sys.executable, "-m", "markovsurf", "verify", "diophantine", "--bound", "10"]
    r = subprocess.run(cmd, capture_output=True, text=True, env={"MARKOVSURF_LOG": "INFO", "PATH": ""})
    assert r.returncode == 0 and "diophantine finished" in r.stderr
