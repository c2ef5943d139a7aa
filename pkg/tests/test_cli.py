from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from lichsharp import families as fam
from lichsharp.cli import main
from lichsharp.graph import line_graph
from lichsharp.graph6 import decode, encode


def run(argv, stdin: str | None = None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(["--threads", "1", *argv], out, err)
    return code, out.getvalue(), err.getvalue()


def gen(*argv) -> str:
    code, out, _ = run(["gen", *argv])
    assert code == 0
    return out


def test_gen_emits_graph6():
    assert decode(gen("johnson", "6", "3").strip()) == fam.johnson(6, 3)
    assert decode(gen("petersen", "--line-graph").strip()) == line_graph(fam.petersen())


def test_gen_output_file(tmp_path):
    target = tmp_path / "g.g6"
    code, out, _ = run(["gen", "cycle", "5", "-o", str(target)])
    assert code == 0 and out == ""
    assert decode(target.read_text().strip()) == fam.cycle(5)


def test_johnson_sharpness_pipeline(monkeypatch):
    code, out, _ = run(["sharpness", "-"], gen("johnson", "6", "3"), monkeypatch)
    data = json.loads(out)
    assert code == 0
    assert data["sharp"] is True
    assert data["kappa_min"] == "2/3" and data["lambda1_exact"] == "2/3"


def test_petersen_edge_curvature(monkeypatch):
    code, out, _ = run(["curvature", "-", "--edge", "0", "1"], gen("petersen"), monkeypatch)
    assert code == 0 and out == "0/1\n"


def test_curvature_formats(monkeypatch, tmp_path):
    path = tmp_path / "k4.g6"
    path.write_text(gen("complete", "4"))
    code, out, _ = run(["curvature", str(path)])
    assert code == 0 and json.loads(out)["kappa_min"] == "4/3"
    code, out, _ = run(["curvature", str(path), "--format", "csv"])
    assert out.splitlines()[0].startswith("u,v")
    assert len(out.splitlines()) == 7
    code, out, _ = run(["curvature", str(path), "--format", "text"])
    assert out.splitlines()[-2:] == ["min 4/3", "max 4/3"]


def test_analyze(monkeypatch):
    code, out, _ = run(["analyze", "-"], gen("petersen"), monkeypatch)
    data = json.loads(out)
    assert data["amply_params"] == [10, 3, 0, 1]
    assert data["girth"] == 5 and data["diameter"] == 2
    assert data["intersection_array"] == {"b": [3, 2], "c": [1, 1]}


def test_spectrum_decimals(monkeypatch):
    code, out, _ = run(["spectrum", "-"], gen("icosahedron"), monkeypatch)
    data = json.loads(out)
    assert data["lambda1"] == "0.5527864045"
    assert data["lambda1_exact"] == "1/1-1/5\u221a5"


@pytest.mark.parametrize("argv", [
    ["gen", "nosuchfamily"],
    ["gen", "johnson", "3"],
    ["gen", "johnson", "3", "5"],
    ["verify", "tables", "--caps", "nope=3"],
    ["verify", "sweeps", "--caps", "cp=x"],
    ["curvature", "/no/such/file"],
    ["--threads", "0", "gen", "cycle", "5"],
    [],
])
def test_usage_errors(argv):
    code, _, _ = run(argv)
    assert code == 2


def test_bad_graph6_is_usage_error(monkeypatch):
    code, _, err = run(["analyze", "-"], "~~~~\n", monkeypatch)
    assert code == 2 and err.startswith("error:")


def test_non_edge_rejected(monkeypatch):
    code, _, err = run(["curvature", "-", "--edge", "0", "2"], gen("cycle", "5"), monkeypatch)
    assert code == 2 and "not an edge" in err


def test_several_graphs_rejected_for_single_input(monkeypatch):
    code, _, _ = run(["sharpness", "-"], gen("cycle", "5") + gen("cycle", "6"), monkeypatch)
    assert code == 2


def test_classify_exit_codes(tmp_path, monkeypatch):
    path = tmp_path / "c.g6"
    path.write_text(gen("cycle", "5") + gen("hamming", "2", "3") + encode(line_graph(fam.petersen())) + "\n")
    code, out, _ = run(["verify", "classify", str(path)])
    verdicts = json.loads(out)
    assert code == 0
    assert [v["match"] for v in verdicts] == ["pentagon", None, "line_graph(petersen)"]

    from lichsharp import verify
    monkeypatch.setattr(verify, "KNOWN_POSITIVE_ARTG", verify.KNOWN_POSITIVE_ARTG[1:])
    code, _, _ = run(["verify", "classify", str(path)])
    assert code == 1
    code, _, err = run(["verify", "classify", str(path), "--warn"])
    assert code == 0 and "warning" in err


def test_verify_lemmas(tmp_path):
    (tmp_path / "a.g6").write_text(gen("dodecahedron") + gen("shrikhande"))
    (tmp_path / "b.g6").write_text(gen("heawood"))
    code, out, _ = run(["verify", "lemmas", str(tmp_path)])
    report = json.loads(out)
    assert code == 0 and len(report) == 3
    assert report[0]["line_graph_nonpositive_edge"]["holds"] is True
    assert report[1]["line_graph_nonpositive_edge"]["applicable"] is False


def test_verify_tables_small_caps():
    caps = "cp=2,h2=2,triangular=4,hamming_vertices=8,johnson_vertices=6,demi_cube=4,doob=3"
    code, out, _ = run(["verify", "tables", "--caps", caps, "--format", "json"])
    rows = json.loads(out)
    assert code == 0
    assert all(r["match"] for r in rows)
    assert {"icosahedron", "gosset", "petersen"} <= {r["graph"] for r in rows}


def test_byte_identical_output(monkeypatch):
    g6 = gen("triangular", "5")
    first = [run([cmd, "-"], g6, monkeypatch)[1] for cmd in ("analyze", "curvature", "spectrum", "sharpness")]
    second = [run([cmd, "-"], g6, monkeypatch)[1] for cmd in ("analyze", "curvature", "spectrum", "sharpness")]
    assert first == second


def test_console_entry_point_pipeline():
    gen_proc = subprocess.run([sys.executable, "-m", "lichsharp", "gen", "johnson", "6", "3"],
                              capture_output=True, text=True, check=True)
    proc = subprocess.run([sys.executable, "-m", "lichsharp", "--threads", "1", "sharpness", "-"],
                          input=gen_proc.stdout, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["sharp"] is True
