import json
import subprocess
import sys

import pytest

from cubicpm import named, write_edge_list
from cubicpm.cli import run


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_named(capsys):
    code, out, _ = _capture(capsys, ["count", "--name", "petersen"])
    assert code == 0 and out == "6\n"


def test_count_from_file(tmp_path, capsys):
    path = tmp_path / "petersen.el"
    path.write_text(write_edge_list(named("petersen")))
    code, out, _ = _capture(capsys, ["count", "--graph", str(path)])
    assert code == 0 and out == "6\n"


def test_count_graph6(tmp_path, capsys):
    path = tmp_path / "petersen.g6"
    path.write_text("IheA@GUAo\n")
    code, out, _ = _capture(capsys, ["count", "--graph", str(path), "--g6"])
    assert code == 0 and out == "6\n"


def test_cuts_human(capsys):
    code, out, _ = _capture(capsys, ["cuts", "--name", "prism"])
    assert code == 0
    assert "cyclic_edge_connectivity: 3" in out
    assert "bridges: []" in out


def test_decompose_k33(tmp_path, capsys):
    path = tmp_path / "k33.el"
    path.write_text(write_edge_list(named("k33")))
    code, out, _ = _capture(capsys, ["decompose", "--graph", str(path)])
    assert code == 0
    assert "brace(n=6,m=9)" in out and "b=0" in out


def test_decompose_json(capsys):
    code, out, _ = _capture(capsys, ["decompose", "--name", "petersen", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["bricks"] == 1 and data["elp_bound"] == 5
    assert data["tree"]["kind"] == "brick"


def test_generate_requires_seed(capsys):
    code, _, err = _capture(capsys, ["generate", "--random", "2", "--n", "6..8"])
    assert code == 2 and "seed" in err


def test_generate_named(capsys):
    code, out, _ = _capture(capsys, ["generate", "--name", "theta"])
    assert code == 0 and out == "2 3\n0 1\n0 1\n0 1\n"


def test_verify_json_exit_zero(capsys):
    code, out, _ = _capture(
        capsys,
        ["verify", "--lemma", "TH_HALF", "--random", "5", "--n", "4..10", "--seed", "7", "--json"],
    )
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 5
    assert all(r["verdict"] == "Pass" for r in reports)
    assert all(r["lemma"] == "TH_HALF" for r in reports)


def test_verify_unknown_lemma(capsys):
    code, _, err = _capture(capsys, ["verify", "--lemma", "NOPE", "--name", "k4"])
    assert code == 2 and "unknown lemma id" in err


def test_verify_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--lemma", "TH_HALF", "--name", "k4", "--frobnicate"])
    assert exc.value.code == 2


def test_report_csv(tmp_path, capsys):
    code, out, _ = _capture(
        capsys,
        ["verify", "--lemma", "TH_HALF", "--name", "petersen", "--json"],
    )
    assert code == 0
    src = tmp_path / "reports.json"
    src.write_text(out)
    code, out, _ = _capture(capsys, ["report", "--graph", str(src)])
    assert code == 0
    assert out.splitlines()[0] == "lemma,total,pass,fail,skipped"
    assert "TH_HALF,1,1,0,0" in out


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = _capture(capsys, ["count", "--name", "cube", "--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == "9\n"


def test_byte_identical_across_runs():
    argv = [
        sys.executable, "-m", "cubicpm.cli", "verify",
        "--lemma", "TH_HALF,THM_EF", "--random", "6", "--n", "4..10",
        "--seed", "13", "--json",
    ]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
