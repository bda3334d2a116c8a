"""CLI contract: flags, exit codes, CSV/JSON shapes, enclosure rendering."""

import json
import subprocess
import sys
from fractions import Fraction
from math import isqrt

import pytest

from polystab import cli

PC4_20 = Fraction("9.6536607436754")
R1_20 = Fraction("0.924464251253069")


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def contains(pair, value, tol=Fraction(1, 10 ** 12)):
    # `value` is a rounded literal, so allow its own truncation error
    return Fraction(pair[0]) - tol <= value <= Fraction(pair[1]) + tol


def test_usage_errors(capsys, monkeypatch):
    assert cli.main([]) == 2
    assert cli.main(["exponent", "--order", "4"]) == 2
    assert cli.main(["exponent", "--order", "4", "--n", "16", "--n", "18"]) == 2
    assert cli.main(["exponent", "--order", "5", "--n", "20"]) == 2
    assert cli.main(["exponent", "--order", "4", "--n", "8"]) == 2
    assert cli.main(["table", "--order", "4", "--n-min", "20",
                     "--n-max", "18"]) == 2
    assert cli.main(["certify", "--lemma", "nope"]) == 2
    assert cli.main(["certify", "--lemma", "C1", "--n", "9",
                     "--n-range", "9..12"]) == 2
    assert cli.main(["gamma-check", "--n-range", "18-20"]) == 2
    assert cli.main(["gamma-check", "--n-range", "12..14"]) == 2
    assert cli.main(["cascade"]) == 2
    monkeypatch.setenv("JL_PRECISION_BITS", "lots")
    assert cli.main(["exponent", "--order", "4", "--n", "20"]) == 2
    capsys.readouterr()


def test_exponent_infinite(capsys):
    code, out, _ = run(capsys, ["exponent", "--order", "4", "--n", "17"])
    assert code == 0
    doc = json.loads(out)
    assert doc["p_c"] == "inf"
    assert doc["radical"] is None and doc["R1"] is None and doc["R2"] is None
    assert doc["precision"] == 256


def test_exponent_finite(capsys):
    code, out, _ = run(capsys, ["exponent", "--order", "4", "--n", "20",
                                "--precision", "80"])
    assert code == 0
    doc = json.loads(out)
    assert contains(doc["p_c"], PC4_20)
    assert contains(doc["R1"], R1_20)
    assert contains(doc["R2"], Fraction(10) - R1_20)
    assert doc["precision"] == 80
    # outward rounding: printed interval is genuinely two-sided
    assert Fraction(doc["p_c"][0]) < Fraction(doc["p_c"][1])


def test_precision_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("JL_PRECISION_BITS", "64")
    _, out, _ = run(capsys, ["exponent", "--order", "4", "--n", "20"])
    assert json.loads(out)["precision"] == 64
    _, out, _ = run(capsys, ["exponent", "--order", "4", "--n", "20",
                             "--precision", "80"])
    assert json.loads(out)["precision"] == 80


def test_table_csv_shape(capsys):
    code, out, _ = run(capsys, ["table", "--order", "4", "--n-min", "9",
                                "--n-max", "20", "--format", "csv",
                                "--precision", "64"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == ("order,n,p_c_lo,p_c_hi,radical_lo,radical_hi,"
                        "R1_lo,R1_hi,R2_lo,R2_hi")
    assert len(lines) == 1 + 12
    for line in lines[1:]:
        assert len(line.split(",")) == 10
    row17 = lines[9].split(",")
    assert row17[:4] == ["4", "17", "inf", "inf"]
    assert row17[4:] == [""] * 6
    row20 = lines[12].split(",")
    assert row20[:2] == ["4", "20"]
    tol = Fraction(1, 10 ** 14)
    assert Fraction(row20[6]) - tol <= R1_20 <= Fraction(row20[7]) + tol


def test_table_harmonic_row(capsys):
    # p_c(1, 11) must bracket (37 + 8*sqrt(10))/9
    code, out, _ = run(capsys, ["table", "--order", "1", "--n-min", "11",
                                "--n-max", "11", "--format", "csv",
                                "--precision", "96"])
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    s = 10 ** 40
    lo = (37 + Fraction(8 * isqrt(10 * s * s), s)) / 9
    hi = (37 + Fraction(8 * (isqrt(10 * s * s) + 1), s)) / 9
    assert Fraction(row[2]) <= lo and hi <= Fraction(row[3])
    assert row[4:] == [""] * 6


def test_table_json_roundtrip(capsys):
    code, out, _ = run(capsys, ["table", "--order", "3", "--n-min", "14",
                                "--n-max", "16", "--format", "json",
                                "--precision", "64"])
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == 0
    assert [r["n"] for r in doc["records"]] == [14, 15, 16]
    assert doc["records"][0]["p_c"] == "inf"
    assert contains(doc["records"][1]["p_c"], Fraction("6158.31559271"),
                    tol=Fraction(1, 10 ** 8))
    assert json.loads(json.dumps(doc)) == doc


def test_certify_out_file(capsys, tmp_path):
    target = tmp_path / "c1.json"
    code, out, _ = run(capsys, ["certify", "--lemma", "C1",
                                "--n-range", "9..12", "--out", str(target)])
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["pass"] and doc["lemma_id"] == "C1"
    assert len(doc["certificates"]) == 8


def test_certify_failure_exit(capsys):
    code, out, _ = run(capsys, ["certify", "--lemma", "Bb2", "--n", "17"])
    assert code == 1
    doc = json.loads(out)
    assert doc["pass"] is False and doc["n"] == 17
    lo, hi = (Fraction(x) for x in doc["isolating"])
    assert Fraction(9, 100) < (lo + hi) / 2 < Fraction(11, 100)


def test_verify_identities_lines(capsys):
    code, out, _ = run(capsys, ["verify-identities"])
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 17
    verdicts = dict(line.split(":", 1) for line in lines[:16])
    assert set(verdicts) == {f"fd1-{j}" for j in range(1, 8)} \
        | {f"fd2-{j}" for j in range(7)} | {"sec6-A", "sec6-B"}
    assert verdicts["fd1-2"].strip() == "Verified"
    assert verdicts["fd1-6"].strip().startswith("Residual")
    assert "\\lambda^{5} (f''')^{2}" in verdicts["fd1-6"]
    assert lines[16] == "derived decompositions: all 14 reduce to zero"


def test_gamma_check(capsys):
    code, out, _ = run(capsys, ["gamma-check", "--n-range", "18..20"])
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 3 and all(" ok " in ln for ln in lines)
    code, out, _ = run(capsys, ["gamma-check", "--n-range", "18..18",
                                "--tol", "1e-40"])
    assert code == 1
    assert "FAIL" in out and "discrepancy_factor" in out


def test_dumps_parse(capsys):
    code, out, _ = run(capsys, ["cascade", "--dump"])
    assert code == 0
    doc = json.loads(out)
    assert "generators" in doc
    code, out, _ = run(capsys, ["spectral", "--dump"])
    assert code == 0
    doc = json.loads(out)
    assert doc["J0_symmetric"] is True
    assert len(doc["quartic_t_coeffs"]) == 5


def test_report_roundtrip(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, _, _ = run(capsys, ["report", "--precision", "128",
                              "--out", str(target)])
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["pass"] is True
    assert doc["lemmas"]["pass"] is True
    assert len(doc["exponents"]) == 112
    assert doc["identities"]["derived_failures"] == []
    off = [r["symbol"] for r in doc["closed_form_comparison"]
           if r["status"] != "Match"]
    assert all(sym.endswith("-assembly") for sym in off)
    assert json.loads(json.dumps(doc)) == doc


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polystab.cli", "exponent", "--order", "4",
         "--n", "17"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["p_c"] == "inf"


def test_directed_decimal_rendering():
    f = Fraction(1, 3)
    assert cli._dec_directed(f, 5, False) == "0.33333"
    assert cli._dec_directed(f, 5, True) == "0.33334"
    assert cli._dec_directed(-f, 5, False) == "-0.33334"
    assert cli._dec_directed(-f, 5, True) == "-0.33333"
    assert cli._dec_directed(Fraction(5, 4), 2, False) == "1.25"
    assert cli._dec_directed(Fraction(5, 4), 2, True) == "1.25"
