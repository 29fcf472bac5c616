import itertools
import subprocess
import sys

import pytest

from tightcycle.cli import main
from tightcycle.constructions import ConstructionReport
from tightcycle.core import TightCycleWitness, new_hypergraph, parse, serialize, verify_witness
from tightcycle.packing import parse_family


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k4(tmp_path):
    path = tmp_path / "k4_all_triples.hg"
    path.write_text(serialize(new_hypergraph(3, 4, itertools.combinations(range(4), 3))))
    return path


def test_construct_then_detect(tmp_path, capsys):
    out = tmp_path / "out.hg"
    code, stdout, _ = run(capsys, "construct", "--r", "3", "--n", "16", "--seed", "2", "--out", str(out))
    assert code == 0
    assert "fast-check free" in stdout and "seed" in stdout
    assert run(capsys, "detect", "--in", str(out))[:2] == (0, "free\n")
    assert run(capsys, "detect", "--in", str(out), "--fast")[0] == 0


def test_extremal_graph(capsys):
    code, out, _ = run(capsys, "extremal", "--r", "2", "--n", "6")
    assert code == 0 and "value 5" in out.splitlines()


def test_extremal_machine(capsys):
    code, out, _ = run(capsys, "extremal", "--r", "3", "--n", "5", "--format", "machine")
    assert out.splitlines()[0] == "format=1" and "value=6" in out


def test_detect_k4(k4, capsys):
    code, out, _ = run(capsys, "detect", "--in", str(k4))
    assert code == 1
    w = TightCycleWitness.parse(out.strip())
    assert w.length == 4 and verify_witness(parse(k4.read_text()), w)


def test_detect_length_window(k4, capsys):
    assert run(capsys, "detect", "--in", str(k4), "--min", "5")[0] == 0


def test_detect_budget_abort(tmp_path, capsys):
    path = tmp_path / "star.hg"
    assert run(capsys, "construct", "--n", "8", "--k", "1", "--out", str(path), "--quiet")[0] == 0
    code, out, _ = run(capsys, "detect", "--in", str(path), "--budget", "3")
    assert code == 2 and out.startswith("aborted")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["girth", "--n", "8"])
    assert exc.value.code == 64


def test_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "detect", "--in", str(tmp_path / "missing.hg"))
    assert code == 74 and err


def test_domain_errors(tmp_path, capsys):
    bad = tmp_path / "bad.hg"
    bad.write_text("3 4 1\n0 1 9\n")
    code, _, err = run(capsys, "detect", "--in", str(bad))
    assert code == 65 and "index out of range at line 2" in err
    code, _, err = run(capsys, "extremal", "--r", "3", "--n", "9")
    assert code == 65 and "infeasible size" in err
    assert run(capsys, "girth", "--n", "8", "--k", "5")[0] == 65


def test_reproducible(tmp_path, capsys):
    outs = []
    for name in ("a", "b"):
        path = tmp_path / f"{name}.hg"
        code, stdout, _ = run(capsys, "construct", "--n", "12", "--k", "2", "--seed", "0x2a", "--out", str(path))
        outs.append((path.read_bytes(), stdout))
    assert outs[0] == outs[1]
    assert run(capsys, "girth", "--n", "16", "--k", "2")[1] == run(capsys, "girth", "--n", "16", "--k", "2")[1]


def test_outputs_roundtrip(tmp_path, capsys):
    g, f, h, rep, lifted = (tmp_path / x for x in ("g.hg", "f.txt", "h.hg", "rep.txt", "l.hg"))
    assert run(capsys, "girth", "--n", "16", "--k", "2", "--out", str(g))[0] == 0
    G = parse(g.read_text())
    assert G.r == 2 and serialize(G, ["bipartite 16 16", "seed 12648430"]) == g.read_text()
    assert run(capsys, "pack", "--n", "16", "--k", "2", "--out", str(f))[0] == 0
    fam = parse_family(f.read_text())
    assert fam.t == 8 and fam.validate() is None
    assert run(capsys, "construct", "--n", "8", "--k", "2", "--out", str(h), "--report", str(rep))[0] == 0
    H = parse(h.read_text())
    report = ConstructionReport.from_text(rep.read_text())
    assert report.hyperedge_count == len(H)
    assert run(capsys, "lift", "--in", str(h), "--out", str(lifted), "--quiet")[0] == 0
    L = parse(lifted.read_text())
    assert L.r == 4 and len(L) == H.n_vertices * len(H)


def test_construct_machine_report(capsys):
    code, out, _ = run(capsys, "construct", "--n", "8", "--k", "2", "--format", "machine", "--out", "/dev/null")
    assert code == 0 and out.startswith("format=1\n")
    assert ConstructionReport.from_text(out).k == 2


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--n", "12", "--verify-states", "100000")
    assert code == 0
    assert out.splitlines()[0].startswith("r,n,construction,edges")
    assert len(out.splitlines()) == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tightcycle", "extremal", "--r", "2", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "value 3" in proc.stdout
