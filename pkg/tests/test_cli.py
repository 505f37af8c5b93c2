import csv
import io
import json
from fractions import Fraction

import mpmath
import pytest
from click.testing import CliRunner

from batemanfn.cli import main
from batemanfn.exactpoly import RatPoly


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return _run


def frac(s):
    return Fraction(s)


def test_eval_example(run):
    r = run("eval", "--n", 1, "--t", 1, "--prec", 128)
    assert r.exit_code == 0
    d = json.loads(r.output)
    with mpmath.workprec(300):
        x = -2 / mpmath.e
        lo, hi = (mpmath.mpf(frac(d["F"][k]).numerator) / frac(d["F"][k]).denominator for k in ("lo", "hi"))
        assert lo <= x <= hi and hi - lo < mpmath.mpf(2) ** -120
    assert frac(d["dF"]["lo"]) == 0 == frac(d["dF"]["hi"])


def test_eval_alpha_and_rationals(run):
    d = json.loads(run("eval", "--n", 3, "--t", "7/4", "--alpha", 2).output)
    assert d["t"] == "7/4" and "F_alpha" in d and "H" in d


def test_usage_errors_exit_2(run):
    assert run("eval", "--n", 1, "--t", "abc").exit_code == 2
    assert run("eval", "--n", 1, "--t", 1, "--prec", 4).exit_code == 2
    assert run("check", "NOPE").exit_code == 2
    assert run("zeros", "--n", "5:2").exit_code == 2
    assert run("figure", "--id", 6).exit_code == 2
    assert run("frobnicate").exit_code == 2


def test_poly_roundtrip_matches_eval(run):
    d = json.loads(run("poly", "--n", 7).output)
    p = RatPoly([frac(c) for c in d["coeffs"]])
    for t in ("1/3", "2", "11/2"):
        e = json.loads(run("eval", "--n", 7, "--t", t).output)["F"]
        lo, hi = frac(e["lo"]), frac(e["hi"])
        val = p(frac(t)) * Fraction(str(mpmath.exp(-mpmath.mpf(frac(t).numerator) / frac(t).denominator)))
        assert lo - Fraction(1, 10 ** 12) <= val <= hi + Fraction(1, 10 ** 12)


def test_poly_csv(run):
    rows = list(csv.reader(io.StringIO(run("poly", "--n", 2, "--format", "csv").output)))
    assert rows == [["power", "coeff"], ["0", "0/1"], ["1", "-2/1"], ["2", "2/1"]]


def test_zeros_range(run):
    out = run("zeros", "--n", "1:3").output.strip().splitlines()
    recs = [json.loads(x) for x in out]
    assert [len(r["zeros"]) for r in recs] == [0, 1, 2]
    assert recs[1]["zeros"][0]["lo"] == "1/1"
    assert all(r["maxima_increasing"] for r in recs)


def test_check_pass_and_report(run, tmp_path):
    rep = tmp_path / "r.json"
    r = run("check", "identities", "integrals", "B6", "--n", "1:4", "--density", 16, "--report", rep)
    assert r.exit_code == 0
    assert r.output.count("PASS") == 3
    data = json.loads(rep.read_text())
    assert all(x["passed"] for x in data["results"])


def test_check_failure_exit_1(run, monkeypatch, tmp_path):
    from batemanfn.bounds import catalog

    fake = catalog.BoundSpec("B6", "broken", "F", (
        catalog.Clause("half", lambda e, n, a: abs(e.F(n)), lambda e, n, a: e.const(Fraction(1, 2)), False),))
    monkeypatch.setitem(catalog.CATALOG, "B6", fake)
    rep = tmp_path / "r.json"
    r = CliRunner().invoke(main, ["check", "B6", "--n", "1", "--density", "8", "--report", str(rep)])
    assert r.exit_code == 1
    assert "FAIL B6" in r.output
    assert not json.loads(rep.read_text())["results"][0]["passed"]


def test_check_domain_error_is_usage(run):
    assert run("check", "B44", "--n", "1:10").exit_code == 2


def test_thresholds(run):
    d = json.loads(run("thresholds").output)
    assert d["E_crossing"] == [17821075, 17821076]
    assert Fraction("21138.2") < frac(d["n0"]["lo"]) < frac(d["n0"]["hi"]) < Fraction("21139.2")


def test_scan_writes_and_resumes(tmp_path):
    out = tmp_path / "scan.jsonl"
    runner = CliRunner()
    r = runner.invoke(main, ["scan", "--max-n", "4", "--out", str(out)])
    assert r.exit_code == 0
    first = out.read_text()
    assert len(first.splitlines()) == 4
    with open(out, "a") as fh:
        fh.write('{"n": 5, "T_n')  # interrupted write
    r = runner.invoke(main, ["scan", "--max-n", "6", "--out", str(out)])
    assert r.exit_code == 0
    lines = out.read_text().splitlines()
    assert [json.loads(x)["n"] for x in lines] == [1, 2, 3, 4, 5, 6]
    assert out.read_text().startswith(first)
    # identical stream from a fresh run
    fresh = tmp_path / "fresh.jsonl"
    runner.invoke(main, ["scan", "--max-n", "6", "--out", str(fresh)])
    assert fresh.read_text() == out.read_text()


def test_scan_deterministic_across_jobs(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    runner = CliRunner()
    runner.invoke(main, ["scan", "--max-n", "5", "--out", str(a), "--jobs", "1"])
    runner.invoke(main, ["scan", "--max-n", "5", "--out", str(b), "--jobs", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_figure1(run, tmp_path):
    out = tmp_path / "fig1.csv"
    assert run("figure", "--id", 1, "--out", out).exit_code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert list(rows[0]) == ["t", "F1", "F2", "F3", "F4", "F5"]
    at_one = [r for r in rows if r["t"] == "1"]
    assert at_one and float(at_one[0]["F2"]) == 0.0
    assert len(rows) >= 512


@pytest.mark.parametrize("fig, first", [(2, "B6"), (3, "one"), (4, "H1"), (5, "H1")])
def test_other_figures(run, fig, first):
    text = run("figure", "--id", fig, "--samples", 16).output
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][1] == first and len(rows) == 17


def test_figure_intervals_and_determinism(run):
    a = run("figure", "--id", 4, "--samples", 8, "--intervals").output
    b = run("figure", "--id", 4, "--samples", 8, "--intervals").output
    assert a == b
    header = a.splitlines()[0].split(",")
    assert header[1:3] == ["H1_lo", "H1_hi"]
    for row in csv.reader(io.StringIO(a.split("\n", 1)[1])):
        if row:
            assert float(row[1]) <= float(row[2])


def test_figure5_range(run):
    rows = list(csv.reader(io.StringIO(run("figure", "--id", 5, "--samples", 3).output)))
    assert [r[0] for r in rows[1:]] == ["1.5", "1.75", "2"]
