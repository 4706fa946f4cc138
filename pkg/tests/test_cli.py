import json
import subprocess
import sys

import pytest

from specgraph.cli import main
from specgraph.graph import Graph, cycle, path, to_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zero_divisor_quotient_check(capsys):
    code, out, _ = run(capsys, "spectrum", "--zero-divisor", "30", "--matrix", "dsq", "--via", "quotient", "--check")
    assert code == 0
    rec = json.loads(out)
    assert rec["inherited"] == [[46, 4], [43, 7], [33, 3], [29, 1]]
    assert rec["check"] == "match"


def test_family_dalpha(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "star", "--n", "10", "--matrix", "dalpha", "--alpha", "0.5")
    assert code == 0
    assert sum(m for _, m in json.loads(out)["pairs"]) == 10


def test_graph6_disconnected(tmp_path, capsys):
    f = tmp_path / "x.g6"
    f.write_text(to_graph6(Graph.from_edges(4, [(0, 1), (2, 3)])) + "\n")
    assert run(capsys, "spectrum", "--graph6-file", str(f), "--matrix", "nl")[0] == 0
    code, _, err = run(capsys, "spectrum", "--graph6-file", str(f), "--matrix", "dsq")
    assert code == 2 and "disconnected" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--family", "star", "--n", "5", "--matrix", "dalpha"],
    ["spectrum", "--family", "star", "--n", "5", "--matrix", "l", "--alpha", "0.5"],
    ["spectrum", "--family", "star", "--zero-divisor", "30", "--n", "5", "--matrix", "l"],
    ["spectrum", "--matrix", "l"],
    ["spectrum", "--family", "star", "--matrix", "l"],
    ["spectrum", "--family", "star", "--n", "5", "--matrix", "bogus"],
    ["spectrum", "--family", "star", "--n", "5", "--matrix", "nl", "--via", "quotient"],
    ["spectrum", "--graph6-file", "/nonexistent/file.g6", "--matrix", "l"],
    ["ranges", "thm4", "--omega", "1", "--t", "3"],
    ["ranges", "thm4", "--omega", "3"],
    ["nonsense"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_csv_output(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "spectrum", "--family", "cycle", "--n", "4", "--matrix", "l",
                     "--format", "csv", "--output", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "input,kind,value,multiplicity" and len(lines) == 4


def test_verify_brouwer(capsys, tmp_path):
    csv1, csv2 = tmp_path / "a.csv", tmp_path / "b.csv"
    code, out, _ = run(capsys, "verify", "brouwer", "--all-connected", "6", "--csv", str(csv1))
    assert code == 0 and "failed 0" in out and out.startswith("checked 143,")
    run(capsys, "verify", "brouwer", "--all-connected", "6", "--csv", str(csv2), "--jobs", "2")
    assert csv1.read_bytes() == csv2.read_bytes()


def test_verify_le_trees(capsys):
    code, out, _ = run(capsys, "verify", "le-trees", "--n-max", "9")
    assert code == 0 and "failed 0" in out


def test_verify_dalpha_graph6(tmp_path, capsys):
    f = tmp_path / "c.g6"
    f.write_text("\n".join(to_graph6(g) for g in (cycle(5), path(4))) + "\n")
    out_csv = tmp_path / "r.csv"
    code, out, _ = run(capsys, "verify", "dalpha-bounds", "--graph6-file", str(f), "--alpha", "0.5", "--csv", str(out_csv))
    assert code == 0
    rows = out_csv.read_text().splitlines()[1:]
    assert {r.split(",")[0] for r in rows} == {to_graph6(cycle(5)), to_graph6(path(4))}


def test_verify_failure_exit_one(tmp_path, capsys, monkeypatch):
    from specgraph import conjectures as cj
    monkeypatch.setitem(cj.PREDICATES, "brouwer",
                        lambda g, label=None, **kw: [cj._report(cj.instance_id(g), "brouwer", g.n, {1: -1.0})])
    details = tmp_path / "d.json"
    code, out, err = run(capsys, "verify", "brouwer", "--all-connected", "3", "--details", str(details))
    assert code == 1 and "checked 4, failed 4" in out and "FAIL" in err
    assert len(json.loads(details.read_text())) == 4


def test_ranges_outputs(capsys):
    code, out, _ = run(capsys, "ranges", "thm3.1", "--omega", "6", "--r", "1", "--c", "0")
    assert code == 0 and "[1,2] U [7,n]" in out
    code, out, _ = run(capsys, "ranges", "thm3.10", "--s", "9", "--r", "2", "--c", "2")
    assert code == 0 and "all k" in out
    code, out, _ = run(capsys, "ranges", "thm4", "--omega", "5", "--t", "3", "--size", "20")
    assert code == 0 and "[1,3] U [6,20]" in out


def test_ranges_cross_check(capsys):
    code, out, _ = run(capsys, "ranges", "thm4", "--omega", "4", "--t", "5", "--cross-check")
    assert code == 0 and "failed 0" in out
    code, out, _ = run(capsys, "ranges", "thm3.8", "--omega", "3", "--a", "2", "--c", "1", "--cross-check")
    assert code == 0 and "failed 0" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "specgraph", "ranges", "thm3.1", "--omega", "6", "--r", "1", "--c", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "[7,n]" in res.stdout
