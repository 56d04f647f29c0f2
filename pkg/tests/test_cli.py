import json
import os
import subprocess
import sys

import pytest

from minfact.cli import run


def cli(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    proc = subprocess.run([sys.executable, "-m", "minfact", *args], capture_output=True, text=True, env=full_env)
    return proc.returncode, proc.stdout, proc.stderr


def test_wsum_chains_text():
    code, out, _ = cli("wsum", "chains", "--a", "2,2")
    assert code == 0 and out == "X1 + 2\n"


def test_enumerate_andre_json_lines():
    code, out, _ = cli("enumerate", "andre", "--n", "4", "--format", "json")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all(json.loads(line)["n"] == 4 for line in lines)


def test_verify_subset_exit_zero():
    code, out, _ = cli("verify", "--check", "theorem1", "--check", "hook", "--max-n", "5")
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert {r["check"] for r in reports} == {"theorem1", "hook"}
    assert all(r["status"] == "pass" for r in reports)


@pytest.mark.parametrize(
    "args",
    [
        ["wsum", "chains"],
        ["wsum", "final", "--n", "4"],
        ["wsum", "chains", "--a", "2,1"],
        ["frobnicate"],
        ["verify", "--max-n", "0"],
        ["enumerate", "andre", "--n", "0"],
        ["psi", "--chain", "{not json"],
    ],
)
def test_usage_errors_exit_two(args):
    assert run(args) == 2


def test_safety_cap(monkeypatch):
    monkeypatch.setenv("MINFACT_MAX_N", "5")
    assert run(["wsum", "cayley", "--n", "6"]) == 2
    assert run(["verify", "--max-n", "6"]) == 2


def test_verify_failure_exit_one(monkeypatch, capsys):
    from minfact import verify

    monkeypatch.setattr(verify, "hook_rhs", lambda n: verify.Polynomial.constant(0))
    assert run(["verify", "--check", "hook", "--max-n", "3", "--parallel", "1"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert any(json.loads(line)["status"] == "fail" and "witness" in json.loads(line) for line in lines)


def test_psi_command(tmp_path):
    code, out, _ = cli("enumerate", "chains", "--a", "2,2,2", "--format", "json")
    first = out.splitlines()[7]
    path = tmp_path / "chain.json"
    path.write_text(first)
    code, out, _ = cli("psi", "--chain", f"@{path}", "--format", "json")
    res = json.loads(out)
    assert code == 0 and set(res) >= {"case", "gamma", "bar", "sigma"}
    assert res["gamma"]["a"] == [2, 3]


def test_export_csv(tmp_path):
    target = tmp_path / "counts.csv"
    assert run(["export", "--max-n", "5", "--output", str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "n,r,a,count,formula_count,match"
    assert len(lines) == 1 + 1 + 2 + 4 + 8
    assert all(line.endswith("True") for line in lines[1:])


def test_parallel_does_not_change_bytes():
    outs = {cli("wsum", "chains", "--n", "7", "--parallel", str(k), "--format", "json")[1] for k in (1, 3)}
    assert len(outs) == 1
    outs = {cli("verify", "--check", "psi", "--max-n", "5", "--parallel", str(k))[1] for k in (1, 2)}
    assert len(outs) == 1


def test_repeat_runs_identical():
    a = cli("enumerate", "final", "--n", "5", "--k", "3", "--format", "csv")[1]
    b = cli("enumerate", "final", "--n", "5", "--k", "3", "--format", "csv")[1]
    assert a == b and a.startswith("index,chain,weight\n")


@pytest.mark.parametrize("kind,extra", [("chains", ["--a", "3,2"]), ("factorizations", ["--a", "2,2"]),
                                        ("cayley", ["--n", "4"]), ("final", ["--n", "4", "--k", "2"])])
def test_enumerate_kinds(kind, extra, capsys):
    assert run(["enumerate", kind, *extra, "--format", "text"]) == 0
    assert capsys.readouterr().out.strip()


@pytest.mark.parametrize("kind,extra,expected", [
    ("andre", ["--n", "4"], "6*X1*X2*X3 + 4*X1*X2 + 9*X1*X3 + 24*X2*X3 + 6*X1 + 16*X2 + 36*X3 + 24"),
    ("cayley", ["--n", "3"], "X1 + 2"),
    ("final", ["--n", "3", "--k", "2"], "X1 + 2"),
])
def test_wsum_kinds(kind, extra, expected, capsys):
    assert run(["wsum", kind, *extra]) == 0
    assert capsys.readouterr().out.strip() == expected
