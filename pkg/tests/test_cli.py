import json
import subprocess
import sys
from pathlib import Path

import pytest

from barkerkit.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,golden", [
    (["analyze", "+++-", "--format", "json"], "analyze_4.json"),
    (["search", "13", "--format", "json"], "search_13.json"),
    (["verify", "eq3", "2..8", "--format", "json"], "verify_eq3.json"),
    (["verify", "theorem1", "4..8", "--format", "json"], "theorem1.json"),
    (["verify", "eq1", "10..12", "--mode", "random", "--samples", "20", "--seed", "42",
      "--format", "json"], "verify_random.json"),
])
def test_golden_json(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


class TestAnalyze:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "analyze", "+++-")
        assert code == 0
        assert "acf       (4, 1, 0, -1)" in out
        assert "is_barker                 true" in out
        assert "is_strong_symmetric       true" in out

    def test_short(self, capsys):
        code, out, _ = run(capsys, "analyze", "++", "--format", "json")
        d = json.loads(out)
        assert code == 0 and d["acf"] == [2, 1] and d["symmetry"]["is_barker"]

    def test_comma_input(self, capsys):
        code, out, _ = run(capsys, "analyze", "1,1,-1", "--format", "json")
        assert code == 0 and json.loads(out)["structure"]["kind"] == "odd"

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "analyze", "+x")
        assert code == 2 and out == "" and "position 2" in err

    def test_missing_input(self, capsys):
        assert run(capsys, "analyze")[0] == 2

    def test_file(self, capsys, tmp_path):
        f = tmp_path / "seqs.txt"
        f.write_text("+++-\n# comment\n\n1,1,-1\n")
        code, out, _ = run(capsys, "analyze", "--file", str(f), "--format", "json")
        d = json.loads(out)
        assert code == 0 and [p["sequence"] for p in d] == ["+++-", "++-"]

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "analyze", "--file", str(tmp_path / "none"))[0] == 2


class TestVerify:
    def test_all_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "all", "2..10")
        assert code == 0 and "FAIL" not in out
        assert out.splitlines()[0].startswith("identity")

    def test_theorem1(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem1", "4..20", "--format", "json")
        rows = json.loads(out)
        assert code == 0
        assert [r["n"] for r in rows] == list(range(4, 21, 2))
        assert rows[0]["match_count"] > 0
        assert all(r["match_count"] == 0 for r in rows[1:])

    def test_lemma7(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma7", "4..12")
        assert code == 0 and "vacuous" in out

    def test_unknown(self, capsys):
        code, _, err = run(capsys, "verify", "bogus")
        assert code == 2 and "bogus" in err

    def test_random_needs_seed(self, capsys):
        assert run(capsys, "verify", "eq1", "--mode", "random")[0] == 2

    def test_budget(self, capsys):
        assert run(capsys, "verify", "eq1", "2..30")[0] == 2
        assert run(capsys, "verify", "eq1", "2..10", "--budget", "10")[0] == 2

    def test_bad_range(self, capsys):
        assert run(capsys, "verify", "eq1", "a..b")[0] == 2

    def test_falsified_exit_code(self, capsys, monkeypatch):
        from barkerkit.verify import REGISTRY, Identity
        monkeypatch.setitem(REGISTRY, "broken", Identity("broken", "planted", lambda a: "bad"))
        code, out, _ = run(capsys, "verify", "broken", "2..3")
        assert code == 1 and "counterexample n=2 --" in out


class TestSearch:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "search", "13")
        lines = out.splitlines()
        assert code == 0 and "+++++--++-+-+" in lines and lines[-1].startswith("# n=13 count=4")

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "search", "6")
        assert code == 0 and out.startswith("# n=6 count=0")

    def test_over_budget(self, capsys):
        assert run(capsys, "search", "4096")[0] == 2
        assert run(capsys, "search", "25", "--no-prune")[0] == 2

    def test_flags(self, capsys):
        code, out, _ = run(capsys, "search", "13", "--canonical", "--format", "json")
        assert code == 0 and json.loads(out)["count"] == 1
        code, out, _ = run(capsys, "search", "4", "--constraint", "equal_odd_correlations",
                           "--no-prune", "--format", "json")
        assert code == 0 and json.loads(out)["count"] == 8

    def test_timing_only_on_request(self, capsys):
        _, out, _ = run(capsys, "search", "5", "--format", "json")
        assert "elapsed" not in out
        _, out, _ = run(capsys, "search", "5", "--format", "json", "--timing")
        assert "elapsed" in out


def test_lengths(capsys):
    code, out, _ = run(capsys, "lengths")
    assert code == 0 and out.strip() == "2 3 4 5 7 11 13"


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "barkerkit", "nonsense"], capture_output=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "barkerkit", "search", "13"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.count("\n") == 5
