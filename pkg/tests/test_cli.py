import json
import subprocess
import sys

import pytest

from chordlab.cli import main
from chordlab.polyg import PolyG
from chordlab.serialize import parse_graph_vector, parse_matrix, parse_poly


@pytest.fixture
def run(tmp_path, capsysbinary):
    def _run(*args, cache=True):
        extra = ["--cache-dir", str(tmp_path / "cache")] if cache else ["--no-cache"]
        code = main([*args, *extra])
        out = capsysbinary.readouterr()
        return code, out.out, out.err.decode()

    return _run


def test_table(run):
    code, out, _ = run("table", "--points", "8")
    assert code == 0
    doc = json.loads(out)
    assert [r["dimension"] for r in doc["rows"]] == [1, 20, 14, 56, 14]
    assert doc["total"] == 105
    assert [r["min_genus"] for r in doc["rows"]] == [4, 3, 2, 2, 1]
    g = PolyG.g()
    assert parse_poly(doc["rows"][0]["eigenvalue"]) == (2 * g - 6) * (2 * g - 4) * (2 * g - 2) * (2 * g)


def test_dims(run):
    code, out, _ = run("dims", "--genus", "1", "--k", "4", "--format", "text")
    assert code == 0 and out.decode().strip().endswith(": 14")
    code, out, _ = run("dims", "--genus", "2", "--k", "3", "--verify")
    assert code == 0 and json.loads(out)["rank"] == 14


def test_cache_is_byte_identical(run, tmp_path):
    first = run("table", "--points", "8", "--format", "csv")
    second = run("table", "--points", "8", "--format", "csv")
    fresh = run("table", "--points", "8", "--format", "csv", cache=False)
    assert first == second == fresh
    assert len(list((tmp_path / "cache").iterdir())) == 1


def test_matrix_jobs_independent(run):
    a = run("matrix", "-n", "6", "--jobs", "1", cache=False)
    b = run("matrix", "-n", "6", "--jobs", "3", cache=False)
    assert a == b and a[0] == 0
    m = parse_matrix(json.loads(a[1]))
    assert len(m) == 15 and m[0][0] == PolyG.linear(2, 0) ** 3


def test_matrix_at_genus(run):
    code, out, _ = run("matrix", "-n", "4", "-g", "2")
    doc = json.loads(out)
    assert doc["genus"] == 2 and doc["entries"][0] == [["16"], ["-4"], ["-4"]]


def test_eigen(run):
    code, out, _ = run("eigen", "--partition", "2,1")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 9 and doc["verified"]
    assert len(doc["basis"]) == 9


def test_relations(run):
    code, out, _ = run("relations", "--k", "1", "--genus", "2", "--seed", "7")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 7 and doc["variant"] == "closed"
    [rel] = doc["relations"]
    assert rel["partition"] == [3] and len(rel["vectors"]) == 1
    v = parse_graph_vector(rel["vectors"][0])
    assert sorted(v.values()) == [6, 9]
    code, out, _ = run("relations", "--k", "1", "--genus", "2", "--variant", "pointed")
    rel = json.loads(out)["relations"][0]
    assert len(rel["vectors"]) == 3 and rel["zero"] == [False, True, True]


def test_tensors(run):
    code, out, _ = run("tensors", "--genus", "2", "--points", "4")
    doc = json.loads(out)
    assert code == 0 and doc["checks"] == {"commutative_square": True}
    code, out, _ = run("tensors", "--genus", "1", "--partition", "2,1")
    doc = json.loads(out)
    assert code == 0 and doc["terms"] == [] and doc["checks"]["kernel"]


def test_partitions_and_diagrams(run):
    code, out, _ = run("partitions", "--k", "4", "--format", "csv")
    assert code == 0 and len(out.decode().splitlines()) == 6
    code, out, _ = run("diagrams", "--points", "6")
    assert json.loads(out)["count"] == 15


@pytest.mark.parametrize(
    "args",
    [
        ["table"],
        ["relations", "--k", "1", "--genus", "1"],
        ["relations", "--k", "2", "--genus", "2"],
        ["diagrams", "--points", "14"],
        ["eigen", "--partition", "1,2"],
        ["eigen", "--partition", "2", "--format", "csv"],
        ["bogus"],
        ["dims", "--genus", "0", "--k", "2"],
    ],
)
def test_usage_errors(run, args):
    code, _, err = run(*args)
    assert code == 2


def test_selftest_quick(run):
    code, out, _ = run("selftest", "--level", "quick", "--format", "text")
    assert code == 0
    assert "FAIL" not in out.decode()


def test_out_file(run, tmp_path):
    target = tmp_path / "o" / "t.json"
    code, out, _ = run("table", "-n", "6", "--out", str(target))
    assert code == 0 and out == b"" and json.loads(target.read_text())["total"] == 15


def test_module_entry_point(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "chordlab", "dims", "--genus", "1", "--k", "3", "--no-cache", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0 and r.stdout.strip().endswith(": 5")


def test_selftest_worker_count_independent(run):
    a = run("selftest", "--jobs", "1")
    b = run("selftest", "--jobs", "3")
    assert a == b
