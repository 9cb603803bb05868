import json
import subprocess
import sys
from pathlib import Path

import pytest

from effective_forms.cli import main

EXAMPLES = Path(__file__).resolve().parent.parent / "examples" / "forms"


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_representative(capsys):
    code, out, _ = run(["classify", str(EXAMPLES / "family3.json")], capsys)
    assert code == 0
    assert "family: 3" in out
    assert "parameter: 1" in out


def test_classify_json_is_deterministic(capsys):
    _, out1, _ = run(["classify", str(EXAMPLES / "family2.json"), "--json"], capsys)
    _, out2, _ = run(["classify", str(EXAMPLES / "family2.json"), "--json"], capsys)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["family"] == 2
    assert doc["q_signature"] == [4, 2, 0]


def test_classify_with_witness(capsys):
    code, out, _ = run(
        ["classify", str(EXAMPLES / "family8.json"), "--witness", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["witness"] is not None
    assert doc["witness_symplectic_defect"] < 1e-10


def test_not_effective_exits_2(tmp_path, capsys):
    doc = {
        "dim": 6,
        "degree": 3,
        "mode": "rational",
        "terms": [{"idx": [1, 4, 5], "coef": "1"}],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["classify", str(path)], capsys)
    assert code == 2
    assert "not effective" in err
    assert "(5,)" in err  # the nonzero contraction component is reported


def test_parse_error_exits_1(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(["classify", str(path)], capsys)
    assert code == 1
    assert "error" in err


def test_equiv_mismatch(capsys):
    code, out, _ = run(
        ["equiv", str(EXAMPLES / "family6.json"), str(EXAMPLES / "family7.json")],
        capsys,
    )
    assert code == 1
    assert "signature mismatch" in out


def test_equiv_match_with_witness(capsys):
    code, out, _ = run(
        [
            "equiv",
            str(EXAMPLES / "family4.json"),
            str(EXAMPLES / "family4.json"),
            "--witness",
            "--json",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["equivalent"] and doc["witness_converged"]


def test_pfaffian_command(capsys):
    code, out, _ = run(
        ["pfaffian", str(EXAMPLES / "pfaffian_hyperbolic.json")], capsys
    )
    assert code == 0
    assert "elliptic" in out


def test_mae_jet_document(capsys):
    code, out, _ = run(["mae", str(EXAMPLES / "jet_family3.json")], capsys)
    assert code == 0
    assert "conclusion: True" in out


def test_stabilizer_and_prolong(capsys):
    code, out, _ = run(["stabilizer", str(EXAMPLES / "family1.json")], capsys)
    assert code == 0
    assert "stabilizer_dim: 8" in out
    code, out, _ = run(["prolong", str(EXAMPLES / "family2.json"), "--json"], capsys)
    assert code == 0
    assert json.loads(out)["prolongation_dim"] == 0


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "effective_forms.cli", "classify",
         str(EXAMPLES / "family9.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "family: 9" in proc.stdout
