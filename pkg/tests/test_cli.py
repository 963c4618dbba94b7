from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from crsym.cli import EXIT_MISMATCH, EXIT_NONTERMINATION, EXIT_PARSE, EXIT_VALIDATION, main, verify_builtin
from crsym.golden import eg1
from crsym.linalg import Mat
from crsym.symbol import CRSymbolData


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(p)


@pytest.mark.parametrize("name", ["eg1", "eg2", "eg3"])
def test_verify_builtins(capsys, name):
    code, out, _ = run(capsys, "verify", name)
    assert code == 0 and out.strip() == f"{name}: pass"
    assert verify_builtin(name) == []


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "eg9")
    assert code == EXIT_PARSE and "unknown builtin" in err


def test_verify_mismatch(capsys, monkeypatch):
    import crsym.golden as golden
    orig = golden.eg1

    def broken():
        ex = orig()
        return type(ex)(ex.id, ex.symbol, ex.reduced_candidate, dict(ex.expected, dimA=7), ex.prolong_mode)

    monkeypatch.setitem(golden.BUILTINS, "eg1", broken)
    code, out, _ = run(capsys, "verify", "eg1", "--json")
    assert code == EXIT_MISMATCH
    assert json.loads(out)["pass"] is False


def test_analyze_text_and_json(capsys):
    code, out, _ = run(capsys, "analyze", "eg1")
    assert code == 0
    assert "signature: (1, 1)" in out and "regular: no" in out and "dim A: 1" in out
    code, out, _ = run(capsys, "analyze", "eg2", "--json")
    assert json.loads(out) == {"signature": [2, 1], "regular": True, "recoverable": True, "dimA": 4, "dimG00": 5}


def test_analyze_file_round_trip(capsys, tmp_path):
    path = write(tmp_path, "s.json", eg1().symbol.to_json())
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert code == 0 and json.loads(out)["dimG00"] == 2


def test_rank_one_file_not_recoverable(capsys, tmp_path):
    s = CRSymbolData(2, 1, Mat.identity(2), (Mat([[1, 0], [0, 0]]),))
    path = write(tmp_path, "r1.json", s.to_json())
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert code == 0 and json.loads(out)["recoverable"] is False


def test_parse_errors(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == EXIT_PARSE
    assert run(capsys, "analyze", write(tmp_path, "bad.json", "{not json"))[0] == EXIT_PARSE
    assert run(capsys, "analyze", write(tmp_path, "short.json", {"m": 2}))[0] == EXIT_PARSE


def test_validation_error(capsys, tmp_path):
    s = {"m": 2, "r": 1, "H": [["1", "0"], ["0", "1"]], "C": [[["0", "1"], ["0", "0"]]]}
    code, _, err = run(capsys, "analyze", write(tmp_path, "inv.json", s))
    assert code == EXIT_VALIDATION and "not symmetric" in err


def test_prolong_builtins(capsys):
    code, out, _ = run(capsys, "prolong", "eg1", "--json")
    assert code == 0 and json.loads(out)["total"] == 8
    code, out, _ = run(capsys, "prolong", "eg2", "--full", "--json")
    assert code == 0 and json.loads(out)["total"] == 16
    code, out, _ = run(capsys, "prolong", "eg2")
    assert code == 0 and "total: 14" in out


def test_prolong_nontermination(capsys, tmp_path):
    path = write(tmp_path, "s.json", eg1().symbol.to_json())
    code, out, _ = run(capsys, "prolong", path, "--full", "--max-degree", "1")
    assert code == 0
    code, _, _ = run(capsys, "prolong", "eg3", "--max-degree", "1")
    assert code == EXIT_NONTERMINATION
    assert run(capsys, "prolong", "eg3", "--max-degree", "0")[0] == EXIT_PARSE
    assert run(capsys, "prolong", path, "--reduced")[0] == EXIT_VALIDATION


def test_prolong_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("CRSYM_MAX_DEGREE", "1")
    assert run(capsys, "prolong", "eg3")[0] == EXIT_NONTERMINATION
    monkeypatch.setenv("CRSYM_MAX_DEGREE", "junk")
    assert run(capsys, "prolong", "eg3")[0] == EXIT_PARSE


def test_scan_prints_json(capsys, tmp_path):
    out_dir = tmp_path / "exc"
    code, out, _ = run(capsys, "scan", "--m", "2", "--signature", "1,1", "--trials", "15", "--seed", "3",
                       "--numerator-bound", "1", "--emit-exceptions", str(out_dir))
    assert code == 0
    rep = json.loads(out)
    assert rep["total"] == 15
    assert len(list(out_dir.iterdir())) == len(rep["exceptions"])


def test_scan_bad_arguments(capsys):
    assert run(capsys, "scan", "--m", "2", "--signature", "x")[0] == EXIT_PARSE
    assert run(capsys, "scan", "--m", "2", "--signature", "3,0")[0] == EXIT_PARSE


def test_conjugate(capsys):
    code, out, _ = run(capsys, "conjugate", "eg1", "--dilation", "i", "--json")
    data = json.loads(out)
    assert code == 0 and data["involution_invariant"] is True
    code, out, _ = run(capsys, "conjugate", "eg1", "--dilation", "3")
    assert code == 0 and "involution invariant: no" in out
    assert run(capsys, "conjugate", "eg1", "--dilation", "0")[0] == EXIT_PARSE
    assert run(capsys, "conjugate", "eg1", "--dilation", "abc")[0] == EXIT_PARSE


def test_candidate_file_round_trip(capsys, tmp_path):
    path = write(tmp_path, "c.json", eg1().reduced_candidate.to_json())
    code, out, _ = run(capsys, "prolong", path, "--json")
    assert code == 0 and json.loads(out)["total"] == 8


@pytest.mark.skipif(shutil.which("crsym") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["crsym", "verify", "eg1"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "pass" in proc.stdout
