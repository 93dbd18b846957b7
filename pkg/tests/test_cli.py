from __future__ import annotations

import csv
import io
import json

import pytest

from glword.cli import main
from glword.ratfunc import RatFunc
from glword.report import Report, emit_report
from glword.table1 import reference


def run_json(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "-o", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_fix_json(tmp_path):
    code, d = run_json(tmp_path, "fix", "-w", "[a,b]", "-q", "2")
    assert code == 0
    assert d["schema"] == 1 and d["n_min"] == 2 and d["var"] == "Q"
    assert RatFunc.from_json(d) == reference("[a,b]", 2)
    assert d["laurent"]["coeffs"][:2] == ["2", "1"]


def test_fix_pretty_laurent(capsys):
    assert main(["fix", "-w", "[a,b]", "-q", "3", "--format", "pretty", "-K", "1"]) == 0
    assert "2 + 4/q^N + O(1/(q^N)^2)" in capsys.readouterr().out


def test_fix_explain(tmp_path):
    code, d = run_json(tmp_path, "fix", "-w", "a", "-q", "2", "--explain")
    assert code == 0 and len(d["summands"]) == 2


def test_stat_matrix_file(tmp_path):
    m = tmp_path / "B.txt"
    m.write_text("2 2\n0 1\n1 0\n")
    code, d = run_json(tmp_path, "stat", "-w", "a", "-q", "2", "--matrix", str(m))
    assert code == 0 and d["stat"] == "custom" and d["n_min"] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n0 1\n")
    assert main(["stat", "-w", "a", "-q", "2", "--matrix", str(bad)]) == 2
    assert main(["stat", "-w", "a", "-q", "3", "--matrix", str(m)]) == 2


def test_stat_selectors(tmp_path):
    code, d = run_json(tmp_path, "stat", "-w", "a", "-q", "2", "--stat", "moment:2")
    assert code == 0 and d["limit"] == "5"
    assert main(["stat", "-w", "a", "-q", "3", "--stat", "eigen:x"]) == 2
    assert main(["stat", "-w", "a", "-q", "3", "--stat", "bogus"]) == 2


def test_limit_consistency(tmp_path):
    code, d = run_json(tmp_path, "limit", "-w", "(ab)^3", "-q", "7")
    assert code == 0 and d["limit"] == 8 and d["consistent"]


def test_pi_q(tmp_path):
    code, d = run_json(tmp_path, "pi-q", "-w", "abab", "-q", "2")
    assert code == 0 and d["value"] == 1


def test_pi_q_requires_word():
    with pytest.raises(SystemExit) as e:
        main(["pi-q", "-q", "2"])
    assert e.value.code == 2


def test_conjecture_scan(tmp_path):
    f = tmp_path / "words.txt"
    f.write_text("a^2\n[a,b]  # commutator\n\nab\n")
    code, d = run_json(tmp_path, "pi-q", "-q", "2", "--conjecture-scan", str(f))
    assert code == 0 and d["total"] == 3 and d["agree"] == 3


def test_crit_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["crit", "-w", "[a,b]", "-q", "2", "--format", "csv", "-o", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert set(rows[0]) == {"generators", "rank", "proper", "primitive"}
    assert sum(r["primitive"] == "True" for r in rows) == 9
    assert sum(r["proper"] == "True" and r["primitive"] == "False" for r in rows) == 1


def test_crit_json_checks(tmp_path):
    code, d = run_json(tmp_path, "crit", "-w", "a^2b^3", "-q", "3")
    assert code == 0 and d["crit2_count"] == 4 and d["prim2_count"] == 104 and all(d["checks"].values())
    code, d = run_json(tmp_path, "crit", "-w", "a^4", "-q", "3")
    assert code == 0 and d["crit1_count"] == 6


def test_oracle_exact(tmp_path, capsys):
    code, d = run_json(tmp_path, "oracle", "-w", "[a,b]", "-q", "2", "-N", "2", "--exact")
    assert code == 0 and d["formula"] == "5/2" and d["oracle"] == "5/2" and d["pass"]
    assert main(["oracle", "-w", "[a,b]", "-q", "2", "-N", "2", "--exact", "--format", "pretty"]) == 0
    assert "formula 5/2, oracle 5/2: PASS" in capsys.readouterr().out


def test_oracle_below_n_min(tmp_path):
    assert main(["oracle", "-w", "a^2b^3", "-q", "2", "-N", "2"]) == 2
    code, d = run_json(tmp_path, "oracle", "-w", "a^3", "-q", "2", "-N", "2", "--force")
    assert code in (0, 1) and d["n_min"] == 3


def test_oracle_mc_seed_recorded(tmp_path):
    code, d = run_json(tmp_path, "oracle", "-w", "ab", "-q", "2", "-N", "4", "--mc", "--samples", "4000")
    assert code == 0 and isinstance(d["seed"], int) and d["prng"]


def test_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["limitdist", "-w", "[a,b]", "-q", "2", "-N", "8", "--samples", "5000", "--seed", "9"]
    assert main(argv + ["-o", str(a), "--threads", "1"]) == 0
    assert main(argv + ["-o", str(b), "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_limitdist_threshold(tmp_path):
    code, d = run_json(tmp_path, "limitdist", "-w", "a", "-q", "2", "-N", "8", "--samples", "2000", "--seed", "1",
                       "--max-tv", "0.0")
    assert code == 1 and not d["pass"]
    assert main(["limitdist", "-w", "a^2", "-q", "2", "-N", "8", "--samples", "100", "--seed", "1"]) == 2


def test_usage_errors():
    assert main(["fix", "-w", "a(", "-q", "2"]) == 2
    assert main(["fix", "-w", "a", "-q", "6"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["fix", "-w", "a"])
    assert e.value.code == 2


def test_budget_exit(monkeypatch):
    assert main(["fix", "-w", "[a,b]^2", "-q", "2", "--budget", "100"]) == 3
    monkeypatch.setenv("GLWORD_BUDGET", "100")
    assert main(["fix", "-w", "[a,b]^2", "-q", "2"]) == 3


def test_verify_table1_light(tmp_path):
    code, d = run_json(tmp_path, "verify-table1", "--skip-heavy")
    assert code == 0 and d["passed"] == d["total"] == 7


def test_emit_report_formats():
    r = Report({"b": 1, "a": [1, 2]}, None, None)
    assert emit_report(r, "json") == emit_report(r, "json")
    assert emit_report(r, "json").decode().index('"a"') < emit_report(r, "json").decode().index('"b"')
    assert emit_report(r, "csv").decode().splitlines()[0] == "a,b,schema"
    assert emit_report(r, "pretty").decode().startswith("a: [1, 2]")
    with pytest.raises(ValueError):
        emit_report(r, "xml")
