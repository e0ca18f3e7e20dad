import json
import subprocess
import sys

import pytest

from ec3sub.cli import main, render_json
from ec3sub.conformance import CLAIM_IDS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_full_torsion(capsys):
    code, out, _ = run(capsys, "classify", "-p", "7", "--general", "0,0,1,0,0")
    assert code == 0
    assert "#E(F_p) = 9" in out and "order 9" in out
    assert out.splitlines()[0].startswith("F_7: ρ = 2, b0 = 3")


def test_classify_twist_json(capsys):
    code, out, _ = run(capsys, "classify", "-p", "7", "--short", "0,5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    r = doc["report"]
    assert r["point_count"] == 7
    assert [s["pointwise_rational"] for s in r["stable_subgroups"]] == [False] * 4


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["classify", "-p", "6", "--short", "0,1"], "not prime"),
        (["classify", "-p", "7", "--short", "0,0"], "singular"),
        (["classify", "-p", "7", "--short", "1"], "--short"),
        (["classify", "-p", "7"], "--short"),
        (["classify", "--short", "1,1"], "-p"),
        (["enumerate", "-p", "5", "--family", "noncyclic"], "p = 1 mod 3"),
        (["enumerate", "-p", "7", "--family", "q2mod3"], "p = 2 mod 3"),
        (["enumerate", "-p", "7", "--family", "bogus"], "invalid choice"),
        (["orbit", "-p", "7", "-a", "3"], "excluded"),
        (["orbit", "-p", "5", "-a", "2"], "p = 1 mod 3"),
        (["fermat", "-p", "5"], "A^2 + 27B^2"),
        (["divpoly", "-p", "7", "--short", "0,0", "-n", "3"], "4A^3"),
        (["divpoly", "-p", "7", "--short", "1,1", "-n", "0"], ">= 1"),
        (["verify", "-p", "1"], "p must be a prime"),
        (["nonsense"], "invalid choice"),
        ([], "required"),
    ],
)
def test_input_errors_exit_1(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert needle in err
    assert out == ""


def test_enumerate_examples(capsys):
    code, out, _ = run(capsys, "enumerate", "-p", "5", "--family", "q2mod3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 4 and doc["formula_value"] == "4" and doc["verdict"] == "match"
    code, out, _ = run(capsys, "enumerate", "-p", "7", "--family", "noncyclic", "--json")
    doc = json.loads(out)
    assert doc["count"] == 1 and doc["formula_value"] == "1"
    for fam in ("cyclic", "twist-cyclic", "twist-noncyclic"):
        code, out, _ = run(capsys, "enumerate", "-p", "13", "--family", fam, "--json")
        doc = json.loads(out)
        assert code == 0 and doc["verdict"] == "match"


def test_divpoly_orbit_fermat(capsys):
    assert run(capsys, "divpoly", "-p", "7", "--short", "0,2", "-n", "3")[1] == "3x^4 + 3x\n"
    code, out, _ = run(capsys, "orbit", "-p", "7", "-a", "4")
    assert code == 0 and out.splitlines()[-1] == "orbit {2, 4, 5, 6}"
    code, out, _ = run(capsys, "fermat", "-p", "13")
    assert out.startswith("6 solutions; 4q = (-5)^2 + 27·1^2")


def test_negative_coefficients(capsys):
    code, out, _ = run(capsys, "divpoly", "-p", "7", "--short=-7,2", "-n", "3")
    assert code == 0 and out == "3x^4 + 3x\n"


@pytest.mark.parametrize("p", [5, 7, 13])
def test_verify_report(capsys, p):
    code, out, _ = run(capsys, "verify", "-p", str(p), "--json")
    doc = json.loads(out)
    ids = [c["id"] for c in doc["claims"]]
    assert ids == list(CLAIM_IDS)
    verdicts = {c["verdict"] for c in doc["claims"]}
    assert verdicts <= {"match", "mismatch", "not-applicable"}
    assert code == (2 if "mismatch" in verdicts else 0)
    assert doc["conventions"]["p"] == p


def test_verify_p5_gating(capsys):
    _, out, _ = run(capsys, "verify", "-p", "5", "--json")
    claims = {c["id"]: c for c in json.loads(out)["claims"]}
    assert claims["q2mod3-class-count"]["verdict"] == "match"
    assert claims["weil-fq2-cardinality"]["verdict"] == "match"
    assert claims["fermat-count"]["verdict"] == "not-applicable"
    assert claims["cyclic-class-count"]["verdict"] == "not-applicable"


def test_verify_p13_cm(capsys):
    _, out, _ = run(capsys, "verify", "-p", "13", "--json")
    doc = json.loads(out)
    assert doc["cm_decomposition"] == {"A": -5, "B": 1}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "-p", "7", "--json"],
        ["classify", "-p", "13", "--short", "1,2", "--json"],
        ["enumerate", "-p", "13", "--family", "cyclic", "--json"],
        ["orbit", "-p", "13", "-a", "5", "--json"],
    ],
)
def test_json_round_trip(capsys, argv):
    _, out, _ = run(capsys, *argv)
    assert render_json(json.loads(out)) == out


def test_json_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "fermat", "-p", "7", "--json-out", str(path))
    assert code == 0 and out.startswith("6 solutions")
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert json.loads(raw.decode("utf-8"))["solutions"] == 6


def test_deterministic_output(capsys):
    first = run(capsys, "verify", "-p", "7")[1]
    assert run(capsys, "verify", "-p", "7")[1] == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ec3sub", "divpoly", "-p", "7", "--short", "0,2", "-n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "3x^4 + 3x\n"
