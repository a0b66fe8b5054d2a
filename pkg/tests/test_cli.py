import json

import pytest

from mockforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "KP" in out and "DIM-TABLE" in out and "disabled" in out


def test_verify_pass_and_json(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--id", "THETA-SHIFT-A", "--p", "1",
                       "--json", str(path))
    assert code == 0 and "PASS" in out
    blob = json.loads(path.read_text())
    assert blob["id"] == "THETA-SHIFT-A" and blob["status"] == "pass"


def test_verify_numeric(capsys):
    code, out, _ = run(capsys, "verify", "--id", "KP", "--a", "1",
                       "--points", "8", "--tol", "1e-9", "--seed", "7")
    assert code == 0
    assert "residual" in out


def test_verify_unknown_identity(capsys):
    code, _, err = run(capsys, "verify", "--id", "NOPE")
    assert code == 2 and "unknown identity" in err


def test_verify_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--id", "KP", "--a", "9")
    assert code == 2 and "valid range" in err


def test_expand_theta(capsys):
    code, out, _ = run(capsys, "expand", "--fn", "theta", "--j", "0",
                       "--level", "1", "--qmax", "5")
    assert code == 0
    assert "q^1 x^-1" in out and "O(q^5)" in out


def test_expand_eta(capsys):
    code, out, _ = run(capsys, "expand", "--fn", "eta", "--k", "2",
                       "--qmax", "6")
    assert code == 0 and "q^1/12" in out


def test_expand_phi_pole_exit_2(capsys):
    code, _, err = run(capsys, "expand", "--fn", "phi", "--m", "1", "--s", "0",
                       "--beta1", "0")
    assert code == 2 and "PoleAtQZero" in err


def test_expand_json_schema(tmp_path, capsys):
    path = tmp_path / "series.json"
    code, _, _ = run(capsys, "expand", "--fn", "numerator", "--m", "1",
                     "--s", "1/2", "--qmax", "4", "--json", str(path))
    assert code == 0
    blob = json.loads(path.read_text())
    assert set(blob) == {"lattice", "trunc", "terms"}
    assert blob["trunc"] == "4"


def test_eval_phi(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "phi", "--tau", "0.8j",
                       "--z1", "0.3+0.1j", "--z2=-0.3+0.7j",
                       "--m", "1/2", "--s", "1/2", "--variant", "minus",
                       "--part", "first")
    assert code == 0
    float(out.split()[0])


def test_spans_dim_and_equal(capsys):
    code, out, _ = run(capsys, "spans", "--space", "V", "--m", "2", "--s", "0",
                       "--op", "dim")
    assert code == 0 and "= 1" in out
    code, out, _ = run(capsys, "spans", "--op", "equal", "--space", "V,U",
                       "--m", "2", "--s", "0")
    assert code == 0 and "EQUAL" in out


def test_spans_tower(capsys):
    code, out, _ = run(capsys, "spans", "--op", "tower", "--space", "Theta",
                       "--m", "3")
    assert code == 0 and "PASS" in out


def test_suite_filter_and_json(tmp_path, capsys):
    path = tmp_path / "suite.json"
    code, out, _ = run(capsys, "suite", "--filter", "THETA-SHIFT-A*",
                       "--json", str(path))
    assert code == 0
    blob = json.loads(path.read_text())
    assert blob["total"] == 6 and blob["fail"] == 0
    assert {c["id"] for c in blob["cases"]} == {"THETA-SHIFT-A",
                                                "THETA-SHIFT-A-MUT"}


def test_suite_jobs_byte_identical(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "suite", "--filter", "THETA-EVAL", "--seed", "5",
        "--json", str(p1))
    run(capsys, "suite", "--filter", "THETA-EVAL", "--seed", "5", "--jobs",
        "2", "--json", str(p2))
    a = json.loads(p1.read_text())
    b = json.loads(p2.read_text())
    for blob in (a, b):
        for case in blob["cases"]:
            case.pop("millis", None)
    assert a == b


def test_env_default_qmax(capsys, monkeypatch):
    monkeypatch.setenv("MOCKFORMS_DEFAULT_QMAX", "3")
    code, out, _ = run(capsys, "expand", "--fn", "theta", "--j", "0",
                       "--level", "1")
    assert code == 0 and "O(q^3)" in out
