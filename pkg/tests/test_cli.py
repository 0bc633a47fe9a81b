import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from kpoisson.cli import OutputRecord, main, read_csv_records
from kpoisson.exact import LambdaPoly, poly_eval_exact


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def records(*argv):
    code, text = run(*argv, "--format", "json")
    return code, [json.loads(line) for line in text.splitlines()]


def test_moment_coeffs():
    code, recs = records("moment", "--k", "2", "--n", "2")
    assert code == 0
    assert recs == [
        {"kind": "moment", "k": 2, "n": 2, "lambda": None, "coeffs": ["0", "2", "9"], "value": None, "status": None}
    ]


def test_moment_values():
    assert run("moment", "--k", "1", "--n", "5", "--lambda", "1") == (0, "1.0\n")
    assert run("moment", "--k", "2", "--n", "2", "--lambda", "1/2", "--exact") == (0, "13/4\n")
    assert run("moment", "--k", "2", "--n", "2", "--lambda", "0.5", "--exact") == (0, "13/4\n")


def test_moment_json_round_trip():
    _, [rec] = records("moment", "--k", "10", "--n", "12", "--lambda", "7/3", "--exact")
    poly = LambdaPoly(int(c) for c in rec["coeffs"])
    assert str(poly_eval_exact(poly, Fraction(rec["lambda"]))) == rec["value"]
    assert len(rec["coeffs"][-1]) > 19  # beyond 64-bit range, kept as a string


def test_pmf_table():
    code, recs = records("pmf", "--k", "1", "--lambda", "1", "--n-max", "2")
    assert code == 0
    e = math.exp(-1)
    assert [float(r["value"]) for r in recs] == pytest.approx([e, e, e / 2], rel=1e-15)
    assert float(recs[-1]["status"]["cumulative"]) == pytest.approx(2.5 * e)
    _, [rec] = records("pmf", "--k", "2", "--lambda", "1", "--n-max", "0")
    assert float(rec["value"]) == pytest.approx(0.135335, abs=1e-6)


def test_pmf_normalisation():
    _, recs = records("pmf", "--k", "2", "--lambda", "1", "--n-max", "200")
    assert float(recs[-1]["status"]["cumulative"]) >= 1 - 1e-10


def test_coeff():
    code, [rec] = records("coeff", "--k", "3", "--n", "4", "--power", "2")
    assert code == 0
    assert rec["status"]["closed_form"] == rec["status"]["extracted"] == "336"
    assert rec["status"]["match"] is True
    assert run("coeff", "--k", "3", "--n", "3", "--power", "1")[1].startswith("[lam^1] M_3(k=3): 6 = 6")


def test_coeff_out_of_range(capsys):
    code, _ = run("coeff", "--k", "2", "--n", "4", "--power", "2")
    assert code == 1
    assert "k >= 3" in capsys.readouterr().err


def test_verify_pass():
    code, text = run("verify", "--k-max", "8", "--n-max", "12")
    assert code == 0 and "PASS" in text
    code, recs = records("verify", "--k-max", "1", "--n-max", "20", "--seed", "3")
    assert code == 0 and recs[-1]["status"]["passed"] is True


def test_verify_fault_injection():
    code, text = run("verify", "--k-max", "3", "--n-max", "4", "--inject-kappa-fault", "1")
    assert code == 2
    assert "FAIL at k=1, n=1" in text
    assert "engine vs fmgf: 2*lam != lam" in text


def test_sample_report():
    argv = ("sample", "--k", "3", "--lambda", "1", "--trials", "1000000", "--seed", "7", "--n-max", "2")
    code, recs = records(*argv)
    assert code == 0
    assert abs(float(recs[0]["status"]["z"])) <= 5
    assert float(recs[0]["status"]["exact"]) == 6.0
    assert run(*argv) == run(*argv)


def test_sample_k1():
    _, recs = records("sample", "--k", "1", "--lambda", "1", "--trials", "100000", "--seed", "1", "--n-max", "3")
    for r in recs:
        assert abs(float(r["value"]) - 1.0) <= 5 * float(r["status"]["stderr"])


def test_sample_large_lambda_rejected(capsys):
    code, _ = run("sample", "--k", "2", "--lambda", "31", "--trials", "10", "--seed", "1", "--n-max", "1")
    assert code == 1
    assert "30" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("moment", "--k", "2", "--n", "2", "--lambda", "abc"),
        ("moment", "--k", "0", "--n", "2"),
        ("moment", "--k", "2", "--n", "-1"),
        ("moment", "--k", "2"),
        ("pmf", "--k", "2", "--lambda", "1/0", "--n-max", "3"),
        ("bogus",),
    ],
)
def test_usage_errors_exit_1(argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv), out=io.StringIO())
        raise SystemExit(code)
    assert exc.value.code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("moment", "--k", "4", "--n", "5"),
        ("moment", "--k", "4", "--n", "5", "--lambda", "3/7", "--exact"),
        ("pmf", "--k", "3", "--lambda", "0.25", "--n-max", "6"),
        ("coeff", "--k", "5", "--n", "7", "--power", "4"),
        ("sample", "--k", "2", "--lambda", "1", "--trials", "5000", "--seed", "2", "--n-max", "2"),
        ("verify", "--k-max", "2", "--n-max", "3"),
    ],
)
def test_csv_and_json_agree(argv):
    _, js = records(*argv)
    _, text = run(*argv, "--format", "csv")
    assert [r.to_dict() for r in read_csv_records(text)] == js
    assert [OutputRecord.from_dict(d).to_dict() for d in js] == js


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kpoisson", "verify", "--k-max", "2", "--n-max", "3", "--inject-kappa-fault", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "kpoisson", "moment", "--k", "x", "--n", "1"], capture_output=True)
    assert proc.returncode == 1
