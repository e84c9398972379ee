import json

import pytest

from factorium.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {
        "star": "vertices 4\nedge 0 1\nedge 0 2\nedge 0 3\n",
        "star_proof": "vertices 4\nf 1 1 1 1\nedge 0 1 rg\nedge 0 2 rg\nedge 0 3 rg\n",
        "k2": "vertices 2\nedge 0 1 rr\n",
        "loop_gg": "vertices 1\nf 2\nedge 0 0 gg\n",
        "k3": "vertices 3\nf 1 1 1\nedge 0 1\nedge 1 2\nedge 0 2\n",
        "bad": "vertices 2\nedge 0 5\n",
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.graph"
        p.write_text(text)
        out[name] = str(p)
    return out


def test_check(files, capsys):
    assert main(["check", files["star"], "--f", "1"]) == 1
    assert capsys.readouterr().out.strip() == "holds=false S={0} deficiency=2"
    assert main(["check", files["k2"], "--f", "1"]) == 0
    assert main(["check", files["star"]]) == 2


def test_check_json(files, capsys):
    assert main(["--json", "check", files["k3"], "--nonempty-only"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"holds": True, "worst_set": [0], "deficiency": -1, "include_empty": False}


def test_factor(files, capsys):
    assert main(["factor", files["k2"], "--f", "1"]) == 0
    assert capsys.readouterr().out.strip() == "factor: [0]"
    assert main(["factor", files["star_proof"]]) == 1
    assert capsys.readouterr().out.strip() == "none"
    assert main(["factor", files["loop_gg"]]) == 1
    assert main(["factor", files["star"], "--f", "1", "--proof-set", "0"]) == 1
    assert main(["factor", files["star"], "--f", "3", "--coloring", "rr,rr,rr"]) == 0


def test_parse_error_exit(files, capsys):
    assert main(["check", files["bad"], "--f", "1"]) == 2
    assert "out of range" in capsys.readouterr().err
    assert main(["check", "/nonexistent/file", "--f", "1"]) == 2
    assert main(["factor", files["k2"], "--f", "1", "--coloring", "rx"]) == 2
    assert main(["bogus"]) == 2


def test_decompose(files, capsys):
    assert main(["--json", "decompose", files["star_proof"]]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["delta"] == 2 and data["A"] == [0] and data["D"] == [1, 2, 3]
    assert data["I"]["0"] == [1, 2, 3]
    assert main(["decompose", files["k3"]]) == 0
    assert "critical=true" in capsys.readouterr().out


def test_audit(files, capsys):
    assert main(["audit", files["star_proof"]]) == 0
    out = capsys.readouterr().out
    assert "pass delta_formula" in out


def test_verify_writes_identical_reports(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        assert main(["verify", "--random", "10", "--seed", "7", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    summary = json.loads(a.read_text().splitlines()[-1])
    assert summary["total"] == 10 and summary["failed"] == 0


def test_verify_exhaustive(capsys):
    assert main(["verify", "--exhaustive", "n=2", "m=3", "--theorems", "main-even"]) == 0
    assert "failed=0" in capsys.readouterr().out


def test_verify_usage_errors(tmp_path):
    assert main(["verify"]) == 2
    assert main(["verify", "--exhaustive", "q=3"]) == 2
    assert main(["verify", "--random", "2", "--theorems", "nope"]) == 2
    assert main(["verify", "--random", "2", "--out", str(tmp_path / "missing" / "r.jsonl")]) == 2


def test_gen(tmp_path, capsys):
    assert main(["gen", "--exhaustive", "n=2", "m=2", "mult=2", "loops=0"]) == 0
    out = capsys.readouterr().out
    assert out.count("vertices") == 3
    assert main(["gen", "--random", "3", "--n", "4", "--m", "5", "--out-dir", str(tmp_path / "g")]) == 0
    assert len(list((tmp_path / "g").iterdir())) == 3
    assert main(["gen", "--random", "1"]) == 2
