import json
import subprocess
import sys

import pytest

from lctkit.cli import main, validate_certificate_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def value_line(out):
    return next(l for l in out.splitlines() if l.startswith("value:")).split()[1]


@pytest.mark.parametrize("poly,value", [("x^2+y^3", "5/6"), ("x^3+x*y^5", "7/15")])
def test_lct_examples(capsys, poly, value):
    code, out, _ = run(capsys, "lct", poly, "--vars", "x,y")
    assert code == 0 and value_line(out) == value and "mode: exact" in out


def test_lct_non_isolated_monomial(capsys):
    code, out, _ = run(capsys, "lct", "x^2*y", "--vars", "x,y,z")
    assert code == 0 and value_line(out) == "1/2" and "flag: non-isolated" in out


def test_lct_json_schema(capsys):
    for poly in ("x^2+y^3+z^6", "x^2*y", "x^3+y^3+z^3+x*y*z"):
        code, out, _ = run(capsys, "lct", poly, "--json")
        obj = validate_certificate_json(json.loads(out))
        assert obj["input"] and code in (0, 3)


def test_schema_rejects_bad_certificates():
    good = {"input": "x", "value": "1", "mode": "exact", "weight": [], "leading_term": "x",
            "trace": [], "flags": []}
    validate_certificate_json(dict(good))
    for patch in ({"mode": "guess"}, {"value": "3/2"}, {"trace": "x"}):
        with pytest.raises(ValueError):
            validate_certificate_json({**good, **patch})
    with pytest.raises(ValueError):
        validate_certificate_json({k: v for k, v in good.items() if k != "flags"})


def test_lct_decimal(capsys):
    code, out, _ = run(capsys, "lct", "x^2+y^3", "--decimal")
    assert code == 0 and "5/6 (~0.833333)" in out


def test_lct_point(capsys):
    code, out, _ = run(capsys, "lct", "x^2-2*x+1+y^3", "--point", "1,0")
    assert code == 0 and value_line(out) == "5/6"


@pytest.mark.parametrize("argv", [
    ("lct", "x^^2"),
    ("lct", "x^2+y^3", "--vars", "x"),
    ("lct", "x^2+y^3", "--truncation", "1"),
    ("ledger", "check", "--lambda", "abc"),
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_classify_commands(capsys):
    code, out, _ = run(capsys, "classify", "sextic", "x^2+y^5")
    assert code == 0 and value_line(out) == "7/10"
    code, out, _ = run(capsys, "classify", "quartic", "x^2+y^2+z^2", "--vars", "x,y,z")
    assert code == 0 and value_line(out) == "1"


def test_tables_sextic_verbatim_reports_mismatches(capsys):
    code, out, _ = run(capsys, "tables", "sextic")
    assert code == 2 and "13/15 rows match" in out and "mismatched rows: 1, 8" in out


def test_tables_errata_corpus(capsys):
    code, out, _ = run(capsys, "tables", "sextic", "--corpus", "sextic_errata")
    assert code == 0 and "15/15 rows match" in out


def test_tables_parallel_is_deterministic(capsys):
    _, serial, _ = run(capsys, "tables", "sextic", "--json", "--parallel", "1")
    _, par, _ = run(capsys, "tables", "sextic", "--json", "--parallel", "3")
    assert serial == par
    rows = json.loads(serial)["rows"]
    assert [r["row"] for r in rows] == sorted(r["row"] for r in rows)


def test_tables_corrupt_corpus(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("5/6 ; x^6+y^6+ ; [0:0:1]\n")
    code, _, err = run(capsys, "tables", "sextic", "--corpus", str(p))
    assert code == 2 and "error" in err
    p.write_text("7/10 ; x^6+y^6+z^6 ; [0:0:1]\n")
    code, out, _ = run(capsys, "tables", "sextic", "--corpus", str(p))
    assert code == 2 and "MISMATCH" in out


def test_ledger_commands(capsys):
    code, out, _ = run(capsys, "ledger", "critical")
    assert code == 0 and "critical lambda: 16/21  binding: E.1" in out
    code, out, _ = run(capsys, "ledger", "critical", "--paper", "quintic", "--json")
    assert code == 0 and json.loads(out)["critical_lambda"] == "22/25"
    code, out, _ = run(capsys, "ledger", "check")
    assert code == 0 and "17/17 cases contradictory" in out
    code, out, _ = run(capsys, "ledger", "check", "--lambda", "16021/21000")
    assert code == 2 and "16/17 cases contradictory" in out
    code, out, _ = run(capsys, "ledger", "check", "--paper", "quintic", "--lambda", "22/25")
    assert code == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lctkit", "lct", "x^2+y^3"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and "value: 5/6" in r.stdout
