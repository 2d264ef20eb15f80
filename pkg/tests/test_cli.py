import json
import subprocess
import sys

import pytest

from qdissect.cli import REPORT_SCHEMA, main, strip_timing


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_expand_pentagonal(capsys):
    code, rep, _ = run_json(capsys, "expand", "(q;q)", "--order", "12")
    assert code == 0 and rep["schema"] == REPORT_SCHEMA
    coeffs = dict(rep["results"][0]["coefficients"])
    assert [coeffs[n] for n in range(13)] == ["1", "-1", "-1", "0", "0", "1", "0", "1", "0", "0", "0", "0", "-1"]


def test_expand_mod81_class3(capsys):
    code, rep, _ = run_json(capsys, "expand", "(q^3,q^5;q^8)/(q,q^7;q^8)", "--order", "11")
    coeffs = dict(rep["results"][0]["coefficients"])
    assert code == 0 and all(coeffs[n] == "0" for n in (3, 7, 11))


def test_expand_order_zero(capsys):
    code, rep, _ = run_json(capsys, "expand", "(2*q,-1/2;q)", "--order", "0")
    assert code == 0 and rep["results"][0]["coefficients"] == [[0, "3/2"]]


def test_parse_error_exit(capsys):
    code, out, err = run(capsys, "expand", "(q;;q)")
    assert code == 2 and "expected {monomial}" in err and "^" in err


def test_verify_cor51(capsys):
    code, rep, _ = run_json(capsys, "verify", "C2EQ1_DISSECT", "--params", "k=4 m=2 r=7 s=3", "--order", "100")
    assert code == 0 and rep["summary"]["all_pass"]


def test_verify_bad_params(capsys):
    assert run(capsys, "verify", "PROP1_DISSECT", "--params", "p=0")[0] == 2
    assert run(capsys, "verify", "NO_SUCH_ROW")[0] == 2


def test_verify_hypothesis_skip(capsys):
    code, rep, _ = run_json(capsys, "verify", "C41_VANISH", "--params", "p=4 s=1 z=q^2", "--order", "20")
    assert code == 2 and rep["summary"]["skipped"] == 1


def test_verify_all_filter(capsys):
    code, rep, _ = run_json(capsys, "verify-all", "RS_*", "--order", "60")
    assert code == 0 and [r["id"] for r in rep["results"]] == ["RS_F", "RS_FINV", "RS_G", "RS_GINV"]


def test_dissect_mod12(capsys):
    code, rep, _ = run_json(capsys, "dissect", "(q^5,q^7;q^12)/(q,q^11;q^12)", "6", "--order", "120")
    assert code == 0 and rep["summary"]["vanishing_classes"] == [5]


def test_vanish_scan(capsys):
    code, rep, _ = run_json(capsys, "vanish-scan", "T2N", "--order", "80", "--jobs", "2")
    assert code == 0 and rep["summary"]["fail"] == 0 and rep["summary"]["pass"] > 0


def test_vanish_scan_negative_control(capsys):
    grid = json.dumps([{"which": "F"}])
    code, rep, _ = run_json(capsys, "vanish-scan", "RS", "--grid", grid, "--order", "40")
    assert code == 0
    from qdissect.vanishing import vanishing_scan

    assert vanishing_scan("RS", [{"which": "F"}], 40, residue_offset=1)[0].status == "fail"


def test_numeric(capsys):
    code, rep, _ = run_json(capsys, "numeric", "RAM_1PSI1")
    assert code == 0 and float(rep["summary"]["max_residual"]) < 1e-15
    point = json.dumps({"q": "0.1", "params": {"a": "2", "b": "0.3", "z": "1.5"}})
    code, out, err = run(capsys, "numeric", "RAM_1PSI1", "--point", point)
    assert code == 2 and "|z| < 1" in err
    code, out, err = run(capsys, "numeric", "RAM_1PSI1", "--point", '{"q": "0.1", "a": "2"}')
    assert code == 2 and '"params"' in err


def test_numeric_consistency(capsys):
    code, rep, _ = run_json(capsys, "numeric", "consistency", "--order", "30")
    assert code == 0 and rep["summary"]["rows"] == 10


def test_list(capsys):
    code, rep, _ = run_json(capsys, "list")
    assert code == 0 and any(r["id"] == "HIRSCH_4DISS" for r in rep["results"])
    row = next(r for r in rep["results"] if r["id"] == "PROP1_DISSECT")
    assert row["schema"]["p"] == "posint" and row["defaults"]


def test_deterministic_reports(capsys):
    _, a, _ = run_json(capsys, "verify-all", "prop:*", "--order", "30")
    _, b, _ = run_json(capsys, "verify-all", "prop:*", "--order", "30")
    assert json.dumps(strip_timing(a), sort_keys=True) == json.dumps(strip_timing(b), sort_keys=True)


def test_cache_identical(capsys, tmp_path, monkeypatch):
    expr = "(q^5,q^7;q^12)/(q,q^11;q^12)"
    _, cold, _ = run_json(capsys, "expand", expr, "--order", "80")
    monkeypatch.setenv("QDISSECT_CACHE_DIR", str(tmp_path / "c"))
    _, first, _ = run_json(capsys, "expand", expr, "--order", "80")
    assert len(list((tmp_path / "c").glob("*.json"))) == 1
    _, warm, _ = run_json(capsys, "expand", expr, "--order", "80")
    for rep in (first, warm):
        assert json.dumps(rep["results"]) == json.dumps(cold["results"])
    code, rep, _ = run_json(capsys, "cache", "clear")
    assert code == 0 and rep["summary"]["removed"] == 1
    assert not (tmp_path / "c").exists()
    # the flag wins over the environment
    _, _, _ = run_json(capsys, "expand", expr, "--order", "10", "--cache-dir", str(tmp_path / "d"))
    assert (tmp_path / "d").exists() and not (tmp_path / "c").exists()


def test_console_entry():
    out = subprocess.run([sys.executable, "-m", "qdissect", "expand", "(q;q)", "-N", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "-1" in out.stdout
    out = subprocess.run([sys.executable, "-m", "qdissect", "verify", "NOPE"], capture_output=True, text=True)
    assert out.returncode == 2


def test_negative_order(capsys):
    assert run(capsys, "expand", "(q;q)", "--order", "-1")[0] == 2
