"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a verification
fails, 2 for usage errors.  JSON output writes rationals as "num/den"
strings; CSV output writes enclosure midpoints (or lo/hi with --intervals).
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Iterable, Optional

import click

from . import analysis, bateman
from .exactpoly import DEFAULT_BITS, Enclosure, eval_enclosed, exp_neg, sqrt_enclosure
from .reports import frac_str

EXIT_FAIL = 1


def _rational(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {value!r}")


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"not a rational number: {value!r}", param, ctx)


RATIONAL = RationalType()


def _range(spec: str) -> tuple[int, int]:
    """'a:b' or 'n'."""
    try:
        if ":" in spec:
            a, b = spec.split(":", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(spec)
    except ValueError:
        raise click.BadParameter(f"expected N or A:B, got {spec!r}")
    if lo > hi:
        raise click.BadParameter(f"empty range {spec!r}")
    return lo, hi


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Exact construction and verification of the Bateman functions F_n."""


# --- eval / poly ------------------------------------------------------------------------

@main.command("eval")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--t", "t", type=RATIONAL, required=True, help="rational, e.g. 1/2 or 0.25")
@click.option("--alpha", type=int, default=None, help="also report F_n^(alpha)")
@click.option("--prec", type=click.IntRange(min=8), default=DEFAULT_BITS, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def eval_cmd(n: int, t: Fraction, alpha: Optional[int], prec: int, out: Optional[str]) -> None:
    """Enclosures of F_n(t), F_n'(t), F_n^(alpha)(t) and H_n(t)."""
    rec: dict = {"n": n, "t": frac_str(t), "prec": prec}
    rec["F"] = eval_enclosed(bateman.bateman_poly(n).rep, t, prec).to_json()
    if n >= 1:
        rec["dF"] = eval_enclosed(bateman.bateman_derivative(n), t, prec).to_json()
        rec["H"] = eval_enclosed(bateman.h_fn(n), t, prec).to_json()
    if alpha is not None:
        rec["alpha"] = alpha
        rec["F_alpha"] = eval_enclosed(bateman.falpha(n, alpha).rep, t, prec).to_json()
    _emit(_dumps(rec), out)


@main.command("poly")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def poly_cmd(n: int, fmt: str, out: Optional[str]) -> None:
    """Exact coefficients of p_n, where F_n(t) = exp(-t) p_n(t)."""
    coeffs = bateman.bateman_poly(n).poly.coeffs
    if fmt == "json":
        _emit(_dumps({"n": n, "coeffs": [frac_str(c) for c in coeffs]}), out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["power", "coeff"])
        for k, c in enumerate(coeffs):
            w.writerow([k, frac_str(c)])
        _emit(buf.getvalue(), out)


# --- zeros ------------------------------------------------------------------------------

@main.command("zeros")
@click.option("--n", "n_spec", required=True, help="N or A:B")
@click.option("--extrema/--no-extrema", default=True, show_default=True)
@click.option("--width-bits", type=click.IntRange(min=8), default=analysis.ZERO_WIDTH_BITS, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def zeros_cmd(n_spec: str, extrema: bool, width_bits: int, out: Optional[str]) -> None:
    """Certified zeros (and critical points, maxima) of F_n, one JSON object per n."""
    lo, hi = _range(n_spec)
    if lo < 1:
        raise click.BadParameter("n must be at least 1")
    lines = []
    for n in range(lo, hi + 1):
        zs = analysis.zero_set(n, width=Fraction(1, 1 << width_bits))
        rec = {"n": n, "zeros": [z.to_json() for z in zs.zeros], "T_n": zs.T_n.to_json()}
        if extrema:
            ext = analysis.extrema(n)
            rec.update({
                "critical_points": [c.to_json() for c in ext.critical_points],
                "T_n_star": ext.T_n_star.to_json(),
                "max_abs": ext.max_abs.to_json(),
                "local_max_values": [v.to_json() for v in ext.local_max_values],
                "maxima_increasing": ext.maxima_increasing,
            })
        lines.append(_dumps(rec))
    _emit("\n".join(lines) + "\n", out)


# --- check ------------------------------------------------------------------------------

SUITES = ("identities", "integrals", "zeros", "parseval", "dominance", "theorem6", "lemma1", "thresholds")


def _check_identities(lo, hi, alphas):
    failures, extra = [], []
    for n in range(lo, hi + 1):
        for a in alphas:
            for r in bateman.identity_suite(n, a):
                if r.identity == "i" and not r.passed:
                    extra.append(f"(i) n={n} alpha={a}: {r.note}")
                elif not r.passed:
                    failures.append(f"({r.identity}) n={n} alpha={a}")
    return failures, extra


def _check_integrals(lo, hi):
    failures = []
    signed = None
    for n in range(lo, hi + 1):
        rec = bateman.exact_integrals(n, n, zs=(Fraction(1, 2), 1, 2, 3))
        if rec.norm_n != 1:
            failures.append(f"norm n={n}")
        if rec.weighted_norm_n != Fraction(2, n):
            failures.append(f"weighted norm n={n}")
        for z, (cf, mom) in rec.laplace.items():
            if cf != mom:
                failures.append(f"Laplace n={n} z={z}")
        for m in range(lo, hi + 1):
            p = bateman.exact_integrals(n, m).product if m != n else None
            if p is None:
                continue
            if abs(n - m) >= 2 and p != 0:
                failures.append(f"orthogonality n={n} m={m}")
            if abs(n - m) == 1:
                if abs(p) != Fraction(1, 2):
                    failures.append(f"neighbour n={n} m={m}")
                signed = p
    return failures, [f"signed neighbour product: {signed}"] if signed is not None else []


def _check_zeros(lo, hi):
    failures = []
    for n in range(lo, hi + 1):
        rep = analysis.zero_bound_checks(n)
        failures += [f"{c.name} n={n}" for c in rep.checks if not c.passed]
    return failures, []


def _check_parseval(lo, hi):
    K = max(hi, 1)
    sums = bateman.parseval_partial_sums(Fraction(1), K)
    vals = bateman.poly_values_at(Fraction(1), K)
    failures = []
    for k in range(1, K + 1):
        a, b = sums[k - 1], sums[k]
        # F_k(1) = 0 exactly (k = 2) adds nothing; everything else must separate
        if vals[k] == 0:
            if not a.certainly_le(b.hi):
                failures.append(f"S_{k} < S_{k - 1}")
        elif not a.certainly_lt(b):
            failures.append(f"S_{k - 1} < S_{k} not certified")
    if not sums[-1].certainly_lt(1):
        failures.append("partial sum not below 1")
    return failures, [f"S_{K}(1) ~ {float(sums[-1].mid):.8f}"]


def _bound_line(rep) -> tuple[list, list]:
    fails = [f"n={v.n} t={v.t} {v.reason}" for v in rep.violations[:5]]
    fails += [c.name for c in rep.checks if not c.passed]
    margin = f"worst margin ~ {float(rep.worst_margin.lo):.6g}" if rep.worst_margin is not None else ""
    return fails, [margin, f"samples={rep.samples}"]


@main.command("check")
@click.argument("items", nargs=-1, required=True)
@click.option("--n", "n_spec", default="1:20", show_default=True, help="N or A:B")
@click.option("--alpha", "alphas", type=int, multiple=True, help="alpha values (identities, B32)")
@click.option("--mode", type=click.Choice(["grid", "exact", "critical_points"]), default="grid", show_default=True)
@click.option("--density", type=click.IntRange(min=1), default=None, help="grid points per unit")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="worker processes (default $BATEMAN_JOBS or 1)")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="write a JSON report here")
def check_cmd(items, n_spec, alphas, mode, density, jobs, report) -> None:
    """Run verification suites and catalog bounds.

    ITEMS are suite names (identities, integrals, zeros, parseval, dominance,
    theorem6, lemma1, thresholds) or bound ids (B6, B16, ..., BH4, or 'bounds'
    for the whole catalog).
    """
    from .bounds import BOUND_IDS, DomainError, dominance_check, lemma1_check, solve_thresholds, theorem6_check
    from .bounds import verify_bound

    lo, hi = _range(n_spec)
    expanded = []
    for it in items:
        expanded += list(BOUND_IDS) if it == "bounds" else [it]
    for it in expanded:
        if it not in SUITES and it not in BOUND_IDS:
            raise click.BadParameter(f"unknown check {it!r}", param_hint="ITEMS")
    results = []
    any_fail = False
    for it in expanded:
        try:
            if it == "identities":
                fails, info = _check_identities(max(lo, 1), hi, alphas or (-1, 0, 1, 2))
            elif it == "integrals":
                fails, info = _check_integrals(max(lo, 1), hi)
            elif it == "zeros":
                fails, info = _check_zeros(max(lo, 1), hi)
            elif it == "parseval":
                fails, info = _check_parseval(lo, hi)
            elif it == "dominance":
                fails, info = _bound_line(dominance_check((max(lo, 1), hi), density or 256))
            elif it == "theorem6":
                fails, info = _bound_line(theorem6_check(3, hi))
            elif it == "lemma1":
                fails = []
                for n in range(max(lo, 2), hi + 1):
                    rep = lemma1_check(n, None, (1, Enclosure.point(n).root(8)))
                    fails += [f"n={n} {c.name}" for c in rep.checks if not c.passed]
                info = []
            elif it == "thresholds":
                tr = solve_thresholds()
                fails = [] if (tr.e_increasing and tr.E_decreasing) else ["monotonicity"]
                info = [f"n0 in [{float(tr.n0.lo):.4f}, {float(tr.n0.hi):.4f}]", f"E crossing {tr.E_crossing}"]
            else:
                reps = []
                for a in (alphas or (1, 2)) if it == "B32" else (None,):
                    reps.append(verify_bound(it, (lo, hi), mode, density, a, jobs))
                fails, info = [], []
                for rep in reps:
                    f, i = _bound_line(rep)
                    fails += f
                    info += i
        except DomainError as exc:
            raise click.UsageError(str(exc))
        ok = not fails
        any_fail |= not ok
        line = f"{'PASS' if ok else 'FAIL'} {it} " + " ".join(x for x in info if x)
        click.echo(line.rstrip())
        for f in fails[:10]:
            click.echo(f"  {f}", err=True)
        results.append({"check": it, "passed": ok, "failures": fails, "info": info})
    if report:
        _emit(_dumps({"n_range": [lo, hi], "results": results}), report)
    if any_fail:
        sys.exit(EXIT_FAIL)


# --- scan -------------------------------------------------------------------------------

def _resume_point(path: str) -> tuple[int, list[dict]]:
    """Next n to compute and the records already on disk (contiguous from n = 1)."""
    from .bounds.scan import ScanRecord

    done: list[dict] = []
    if not os.path.exists(path):
        return 1, done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                ScanRecord.from_json(rec)
            except (ValueError, KeyError, TypeError):
                break  # truncated tail of an interrupted run
            if rec.get("n") != len(done) + 1:
                break
            done.append(rec)
    return len(done) + 1, done


@main.command("scan")
@click.option("--max-n", type=click.IntRange(min=1), required=True)
@click.option("--fast-path/--no-fast-path", default=False, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="append-only JSONL record stream")
@click.option("--resume/--no-resume", default=True, show_default=True, help="continue an existing --out stream")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="worker processes (default $BATEMAN_JOBS or 1)")
def scan_cmd(max_n: int, fast_path: bool, out: Optional[str], resume: bool, jobs: Optional[int]) -> None:
    """Certify max_t |F_n(t)| <= 2/e for n = 1..MAX_N (strict for n >= 2)."""
    from .bounds.scan import iter_scan

    start, done = 1, []
    if out and resume:
        start, done = _resume_point(out)
        if done:
            # rewrite the valid prefix so a truncated last line never survives
            with open(out, "w", encoding="utf-8") as fh:
                fh.writelines(_dumps(r) + "\n" for r in done)
    elif out:
        open(out, "w").close()
    failed = [r["n"] for r in done if not r.get("passed")]
    sink = open(out, "a", encoding="utf-8") if out else None
    count = len(done)
    try:
        for rec in iter_scan(range(start, max_n + 1), fast_path, jobs):
            line = _dumps(rec.to_json())
            if sink:
                sink.write(line + "\n")
                sink.flush()
            else:
                click.echo(line)
            count += 1
            if not rec.passed:
                failed.append(rec.n)
                click.echo(f"FAIL n={rec.n} max_abs={rec.max_abs!r} margin={rec.margin!r}", err=True)
    finally:
        if sink:
            sink.close()
    click.echo(f"{'PASS' if not failed else 'FAIL'} scan n<= {max_n}: {count} records, "
               f"{len(failed)} failures", err=True)
    if failed:
        sys.exit(EXIT_FAIL)


# --- thresholds -------------------------------------------------------------------------

@main.command("thresholds")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def thresholds_cmd(out: Optional[str]) -> None:
    """n0 with e(n0) = e/sqrt(2), and the n where E(n) drops below 2/e."""
    from .bounds import solve_thresholds

    tr = solve_thresholds()
    _emit(_dumps(tr.to_json()), out)
    if not (tr.e_increasing and tr.E_decreasing):
        sys.exit(EXIT_FAIL)


# --- figures ----------------------------------------------------------------------------

FIGURES = {1: (Fraction(0), Fraction(12)), 2: (Fraction(0), Fraction(10)), 3: (Fraction(0), Fraction(6)),
           4: (Fraction(0), Fraction(3)), 5: (Fraction(3, 2), Fraction(2))}


def _figure_columns(fig: int) -> list[tuple[str, Callable[[Fraction], Optional[Enclosure]]]]:
    def ev(f):
        return lambda t: eval_enclosed(f, t)

    if fig == 1:
        return [(f"F{n}", ev(bateman.bateman_poly(n).rep)) for n in range(1, 6)]
    if fig == 2:
        cols = [("B6", lambda t: (1 - exp_neg(2 * t)).sqrt())]
        for n in range(1, 6):
            cols.append((f"B26_{n}", (lambda n: lambda t: (Enclosure.point(4 * t / (2 * n - t)).sqrt()
                                                          if t < 2 * n else None))(n)))
        for n in range(1, 6):
            cols.append((f"absF{n}", (lambda f: lambda t: abs(eval_enclosed(f, t)))(bateman.bateman_poly(n).rep)))
        return cols
    if fig == 3:
        return [
            ("one", lambda t: Enclosure.point(1)),
            ("two_over_t", lambda t: Enclosure.point(2 / t) if t > 0 else None),
            ("sqrt_4t_over_2mt", lambda t: Enclosure.point(4 * t / (2 - t)).sqrt() if t < 2 else None),
            ("sqrt_2t", lambda t: Enclosure.point(2 * t).sqrt()),
            ("inv_sqrt_t_tm2", lambda t: Enclosure.point(1 / (t * (t - 2))).sqrt() if t > 2 else None),
        ]
    return [(f"H{n}", ev(bateman.h_fn(n))) for n in range(1, 21)]


@main.command("figure")
@click.option("--id", "fig", type=click.IntRange(1, 5), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--samples", type=click.IntRange(min=2), default=512, show_default=True)
@click.option("--digits", type=click.IntRange(1, 30), default=12, show_default=True)
@click.option("--intervals", is_flag=True, help="emit lo/hi columns instead of midpoints")
def figure_cmd(fig: int, out: Optional[str], samples: int, digits: int, intervals: bool) -> None:
    """CSV data behind figures 1-5.

    1: F_1..F_5 on [0, 12] (zeros added to the grid); 2: |F_n| with the
    sqrt(1 - e^-2t) and sqrt(4t/(2n - t)) bounds; 3: the H_n bound curves;
    4, 5: H_1..H_20 on [0, 3] and [1.5, 2].
    """
    a, b = FIGURES[fig]
    cols = _figure_columns(fig)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["t"]
    for name, _ in cols:
        header += [f"{name}_lo", f"{name}_hi"] if intervals else [name]
    w.writerow(header)
    fmt = f"{{:.{digits}g}}"
    ts = {a + (b - a) * Fraction(i, samples - 1) for i in range(samples)}
    if fig == 1:
        # put the sign changes on the grid (exact where the zero is rational, e.g. F_2 at t = 1)
        for n in range(2, 6):
            ts.update(z.mid for z in analysis.zero_set(n).zeros if a <= z.mid <= b)
    for t in sorted(ts):
        row = [fmt.format(float(t))]
        for _, fn in cols:
            v = fn(t)
            if v is None:
                row += ["", ""] if intervals else [""]
            elif intervals:
                row += [fmt.format(float(v.lo)), fmt.format(float(v.hi))]
            else:
                row.append(fmt.format(float(v.mid)))
        w.writerow(row)
    _emit(buf.getvalue(), out)


if __name__ == "__main__":  # pragma: no cover
    main()
