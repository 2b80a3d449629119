import json
import subprocess
import sys

import pytest

from rittkit.cli import main


def run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify_thm11_case3(capsys):
    code, out = run(capsys, "verify-thm11", "--case", "3", "--n", "2", "--m", "3")
    assert code == 0 and out["verdict"] == "verified"
    assert "(2*z^2 - 1) o (4*z^3 - 3*z)" in out["results"][0]["identity"]


def test_verify_thm11_sweep(capsys):
    code, out = run(capsys, "verify-thm11")
    assert code == 0 and out["checked"] > 100


def test_verify_thm11_bad_params(capsys):
    code, out = run(capsys, "verify-thm11", "--case", "3", "--n", "2", "--m", "4")
    assert code == 2 and out["error"]["kind"] == "invariant"


def test_irreducible(capsys):
    code, out = run(capsys, "irreducible", "--A", "T(4)", "--B", "-T(4)")
    assert code == 1 and out["verdict"] == "reducible" and out["o"] == 2
    code, out = run(capsys, "irreducible", "--A", "T(2)", "--B", "-T(2)")
    assert code == 0 and out["verdict"] == "irreducible"


def test_genus_rh2(capsys):
    code, out = run(capsys, "genus", "rh2", "--A", "pow(2)", "--B", "z^3-3*z")
    assert code == 0 and out["genus"] == 1


def test_passport(capsys):
    code, out = run(capsys, "passport", "--A", "3*z^4-4*z^3")
    assert code == 0
    assert json.dumps(out).count("[1, 3]") + json.dumps(out).count("[1,3]") >= 1


def test_compose_and_parse_error(capsys):
    code, out = run(capsys, "compose", "T(2)", "T(3)")
    assert code == 0
    code, out = run(capsys, "compose", "z^2", "z^")
    assert code == 2 and out["error"]["kind"] == "parse"
    assert (out["error"]["line"], out["error"]["column"]) == (1, 3)


def test_decompose_and_classify(capsys, tmp_path):
    code, out = run(capsys, "decompose", "--A", "z^6+1")
    assert code == 0
    quad = tmp_path / "quad.json"
    quad.write_text(json.dumps({"A": "T(3)", "C": "D(2)", "B": "D(2)", "D": "z^3"}))
    code, out = run(capsys, "classify", "--quad", str(quad))
    assert code == 0 and out["witness"]["case"] == 4


def test_fiber_product_and_mono(capsys, tmp_path):
    code, out = run(capsys, "fiber-product", "--tuple", "T:4", "--tuple", "T:4:-1")
    assert out["o"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"degree": 3, "branch_labels": [0, "inf"],
                               "perms": [[2, 1, 3], [3, 2, 1]]}))
    code, out = run(capsys, "mono", "validate", "--tuple", str(bad))
    assert code == 1 and not out["ok"]
    code, out = run(capsys, "fiber-product", "--tuple", str(bad), "--tuple", "pow:2")
    assert code == 2 and out["error"]["kind"] == "invariant"
    code, out = run(capsys, "mono", "validate", "--tuple", str(tmp_path / "missing.json"))
    assert code == 2 and out["error"]["kind"] == "ingest"


def test_ritt_chain(capsys):
    code, out = run(capsys, "ritt-chain", "--from", '["T(2)", "T(3)"]', "--to", '["T(3)", "T(2)"]')
    assert code == 0 and len(out["positions"]) == 1
    code, out = run(capsys, "ritt", "chain", "--from", '["T(2)", "T(3)"]', "--to", '["T(3)", "T(2)"]')
    assert code == 0


def test_first_ritt(capsys):
    code, out = run(capsys, "first-ritt", "--A", "T(12)")
    assert code == 0 and out["connected"] is True


def test_console_script_module():
    p = subprocess.run([sys.executable, "-m", "rittkit", "genus", "rh2", "--A", "T(2)", "--B", "T(3)",
                        "--json"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["genus"] == 0
