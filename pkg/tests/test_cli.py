import io
import json

import pytest

from conftest import diamond
from planarflow import SinkValueVector, gen_random_planar, parse_dimacs, write_dimacs
from planarflow import cli
from planarflow.dimacs import Terminals


@pytest.fixture
def g1_file(tmp_path):
    path = tmp_path / "g1.dimacs"
    path.write_text(write_dimacs(diamond(), Terminals(0, 3)))
    return str(path)


def pft(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_maxflow(capsys, g1_file):
    code, out, _ = pft(capsys, "maxflow", "--in", g1_file, "--source", "1", "--sink", "4", "--cut")
    assert code == 0
    assert out == "value 5\ncut 1 2\n"


def test_maxflow_terminals_from_file_and_json(capsys, g1_file):
    code, out, _ = pft(capsys, "maxflow", "--in", g1_file, "--format", "json", "--engine", "reference")
    assert code == 0
    assert json.loads(out) == {"source": 0, "sink": 3, "value": 5}


def test_sssk_check(capsys, g1_file):
    code, out, _ = pft(capsys, "sssk", "--in", g1_file, "--source", "1", "--engine", "fast", "--check")
    assert code == 0
    assert out.split("\n")[1:4] == ["2  3", "3  3", "4  5"]


@pytest.mark.parametrize("engine", ["baseline", "reference"])
def test_sssk_engines_json(capsys, g1_file, engine):
    code, out, _ = pft(capsys, "sssk", "--in", g1_file, "--engine", engine, "--format", "json", "--check")
    assert code == 0
    assert json.loads(out)["entries"] == [None, 3, 3, 5]


def test_sssk_check_mismatch_writes_reproducer(capsys, tmp_path, monkeypatch):
    g = gen_random_planar(30, 20, 4)
    src = tmp_path / "g.dimacs"
    src.write_text(write_dimacs(g))
    real = cli.sssk_fast

    def broken(h, faces, s):
        vec = real(h, faces, s)
        vals = [v + 1 if v is not None and v > 0 else v for v in vec.values]
        return SinkValueVector(s, tuple(vals))

    monkeypatch.setattr(cli, "sssk_fast", broken)
    repro = tmp_path / "repro.dimacs"
    code, _, err = pft(capsys, "sssk", "--in", str(src), "--source", "1", "--check", "--repro", str(repro))
    assert code == 1
    assert "check failed" in err
    small, term = parse_dimacs(repro.read_text())
    # one arc of capacity 1 out of the source is enough to show the bug
    assert (small.n, small.m) == (2, 1)
    assert small.arcs[0].capacity == 1
    assert small.arcs[0].tail == term.source
    assert small.arcs[0].head == term.sink


def test_allpairs_query(capsys, g1_file, tmp_path, monkeypatch):
    table = tmp_path / "table.json"
    code, out, _ = pft(capsys, "allpairs", "--in", g1_file, "--out", str(table), "--distinct")
    assert code == 0
    assert out == "distinct 4\n"
    code, out, _ = pft(
        capsys, "query", "--table", str(table), "--in", g1_file,
        stdin="1 4\n1 1\n\n4 1\n", monkeypatch=monkeypatch,
    )
    assert code == 0
    assert out == f"5\n{cli.DIAGONAL_MARKER} 1 1\n0\n"


def test_query_errors(capsys, g1_file, tmp_path, monkeypatch):
    table = tmp_path / "table.json"
    pft(capsys, "allpairs", "--in", g1_file, "--out", str(table))
    code, _, err = pft(capsys, "query", "--table", str(table), stdin="1 x\n", monkeypatch=monkeypatch)
    assert code == 1 and "BadPairLine" in err
    code, _, err = pft(capsys, "query", "--table", str(table), stdin="1 9\n", monkeypatch=monkeypatch)
    assert code == 1
    other = tmp_path / "other.dimacs"
    other.write_text(write_dimacs(gen_random_planar(4, 5, 1)))
    code, _, err = pft(capsys, "query", "--table", str(table), "--in", str(other), stdin="", monkeypatch=monkeypatch)
    assert code == 1 and "FingerprintMismatch" in err
    code, _, err = pft(capsys, "query", "--in", g1_file)
    assert code == 2 and "--table" in err


def test_allpairs_text(capsys, g1_file):
    code, out, _ = pft(capsys, "allpairs", "--in", g1_file)
    assert code == 0
    assert out.splitlines()[1].split() == ["1", "-", "3", "3", "5"]


def test_cutsets(capsys, g1_file):
    code, out, _ = pft(capsys, "cutsets", "--in", g1_file)
    assert code == 0
    assert out.splitlines()[-1] == "pairs 6 total_size 9"
    code, out, _ = pft(capsys, "cutsets", "--in", g1_file, "--format", "json", "--include-zero", "--dedup")
    obj = json.loads(out)
    assert len(obj["cuts"]) == 12 and obj["total_size"] == 9


def test_gen(capsys, tmp_path):
    code, out, _ = pft(capsys, "gen", "--family", "grid", "--size", "2", "3", "--seed", "7")
    assert code == 0
    g, _ = parse_dimacs(out)
    assert (g.n, g.m) == (6, 7)
    dest = tmp_path / "h.dimacs"
    assert pft(capsys, "gen", "--family", "hard", "--size", "3", "--out", str(dest))[0] == 0
    assert parse_dimacs(dest.read_text())[0].n == 8
    assert pft(capsys, "gen", "--family", "path", "--caps", "4", "9")[0] == 0
    assert pft(capsys, "gen", "--family", "grid", "--size", "3")[0] == 2


def test_bench(capsys):
    code, out, _ = pft(capsys, "bench", "--sizes", "16", "32", "64", "128", "--format", "json")
    assert code == 0
    assert json.loads(out)["sizes"] == [16, 32, 64, 128]
    code, _, err = pft(capsys, "bench", "--sizes", "16", "32")
    assert code == 1 and "TooFewSizes" in err


def test_verify(capsys, g1_file, tmp_path):
    code, out, _ = pft(capsys, "verify", "--in", g1_file)
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()] == ["ok", "ok", "ok"]
    bad = tmp_path / "k.dimacs"
    bad.write_text("p max 4 2\na 1 2 1\na 3 4 1\nr 1 +1\nr 2 -1\nr 3 +2\nr 4 -2\n")
    code, out, _ = pft(capsys, "verify", "--in", str(bad), "--format", "json")
    obj = json.loads(out)
    assert code == 1 and not obj["ok"]
    assert "not connected" in obj["checks"][0]["detail"]


def test_usage_errors(capsys, g1_file):
    assert pft(capsys)[0] == 2
    code, _, err = pft(capsys, "maxflow", "--in", g1_file, "--bogus")
    assert code == 2 and "--bogus" in err
    code, _, err = pft(capsys, "maxflow", "--in", g1_file, "--source", "9")
    assert code == 2 and "--source" in err
    code, _, err = pft(capsys, "sssk", "--engine", "warp")
    assert code == 2 and "--engine" in err
    code, _, err = pft(capsys, "maxflow")
    assert code == 2


def test_domain_errors(capsys, tmp_path):
    broken = tmp_path / "x.dimacs"
    broken.write_text("p max 2 1\na 1 2 -3\n")
    code, _, err = pft(capsys, "maxflow", "--in", str(broken), "--source", "1", "--sink", "2")
    assert code == 1 and "line 2" in err
    code, _, _ = pft(capsys, "maxflow", "--in", str(tmp_path / "missing"), "--source", "1", "--sink", "2")
    assert code == 1


def test_log_env(capsys, g1_file, monkeypatch):
    monkeypatch.setenv("PFT_LOG", "debug")
    assert pft(capsys, "maxflow", "--in", g1_file)[0] == 0
