import io
import json
import subprocess
import sys

import pytest

from affdemazure.cli import parse_and_run, parse_vector, UsageError


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = parse_and_run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_word(capsys):
    code, out, _ = run(["word", "--algebra", "A1^1", "--coweight", "2"], capsys)
    assert code == 0 and out.strip() == '{"letters":[1,0],"sigma":"id"}'
    code, out, _ = run(["word", "--algebra", "A1", "--coweight", "1"], capsys)
    assert json.loads(out) == {"letters": [1], "sigma": [1, 0]}


def test_char_demazure(capsys):
    code, out, _ = run(["char", "--algebra", "A1^1", "--level", "1", "--coweight", "1"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj == {"algebra": "A1^1", "level": 1,
                   "terms": [{"weight": [-1], "mult": 1}, {"weight": [1], "mult": 1}]}


def test_char_irreducible_and_formats(capsys):
    code, js, _ = run(["char", "--algebra", "C2", "--weight", "0,1"], capsys)
    code2, tsv, _ = run(["char", "--algebra", "C2", "--weight", "0,1", "--format", "tsv"], capsys)
    assert code == code2 == 0
    terms = sorted((tuple(t["weight"]), t["mult"]) for t in json.loads(js)["terms"])
    rows = tsv.strip().splitlines()[1:]
    assert sorted((tuple(map(int, r.split("\t")[0].split(","))), int(r.split("\t")[1])) for r in rows) == terms
    assert sum(m for _, m in terms) == 5


def test_decompose_from_coweight_and_stdin(capsys, monkeypatch):
    code, out, _ = run(["decompose", "--algebra", "C2", "--level", "1", "--coweight", "1,0"], capsys)
    assert code == 0
    assert json.loads(out) == {"parts": [{"weight": [0, 0], "mult": 1, "dim": 1},
                                         {"weight": [2, 0], "mult": 1, "dim": 10}]}
    _, char_json, _ = run(["char", "--algebra", "A1^1", "--level", "1", "--coweight", "2"], capsys)
    code, out, _ = run(["decompose", "--input", "-"], capsys, stdin=char_json, monkeypatch=monkeypatch)
    assert code == 0
    assert [p["dim"] for p in json.loads(out)["parts"]] == [1, 3]


def test_verify_instances(capsys):
    code, out, _ = run(["verify", "thm2", "--algebra", "C2", "--node", "1", "--level", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass" and rep["lhs"]["dim"] == 11
    assert "elapsed_ms" not in rep
    code, out, _ = run(["verify", "thm1", "--algebra", "C2", "--level", "1", "--parts", "1,0;0,1"], capsys)
    assert code == 0 and json.loads(out)["lhs"]["dim"] == 55
    code, out, _ = run(["verify", "thm1a", "--algebra", "A1", "--level", "0", "--s", "1", "--node", "1",
                        "--reading", "stated"], capsys)
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_limit_command(capsys):
    code, out, _ = run(["limit", "--algebra", "A1", "--level", "1", "--N", "2"], capsys)
    assert code == 0
    assert sum(t["mult"] for t in json.loads(out)["terms"]) == 16


@pytest.mark.parametrize("argv, fragment", [
    (["char", "--algebra", "Q7", "--level", "1", "--coweight", "1"], "--algebra"),
    (["char", "--algebra", "A2^1", "--level", "1", "--coweight", "1,x"], "column 3"),
    (["char", "--algebra", "A2^1", "--level", "1", "--coweight", "1"], "expected 2 coordinates"),
    (["char", "--algebra", "A2^1", "--level", "1", "--coweight", "1,-1"], "not dominant"),
    (["char", "--algebra", "A2^1", "--level", "1", "--coweight", "0,0", "--weight", "2,0"], "not dominant"),
    (["verify", "thm2", "--algebra", "E8", "--node", "1", "--level", "1"], "not covered"),
    (["verify", "thm1a", "--algebra", "C2", "--level", "1", "--s", "1", "--node", "1"], "not minuscule"),
    (["verify", "thm2", "--algebra", "C2", "--level", "1"], "--node is required"),
    (["char", "--algebra", "A2", "--weight", "1,-1"], "not dominant"),
])
def test_usage_errors(argv, fragment, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert fragment in err


def test_argparse_errors_exit_2(capsys):
    assert parse_and_run(["frobnicate"]) == 2
    assert parse_and_run(["verify", "nonsense"]) == 2
    capsys.readouterr()


def test_parse_vector():
    assert parse_vector(" 1, 0,-2") == (1, 0, -2)
    with pytest.raises(UsageError, match="column 5"):
        parse_vector("1,2,a")
    with pytest.raises(UsageError):
        parse_vector("")


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "affdemazure", "verify", "thm1", "--max-rank", "2", "--max-level", "1"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True, env={"AFFDEMAZURE_WORKERS": "2",
                                                                  "PATH": "/usr/bin:/bin"})
    assert a.returncode == 0 and a.stdout == b.stdout
    assert len(a.stdout.splitlines()) == 23
