"""The inequality catalog and its verification on grids and at critical points.

Each bound is a list of clauses ``lhs(n, t) <= rhs(n, t)`` (or ``<``) with an
explicit domain in n and t.  Formulas are written once against an evaluator
interface and run either vectorized on a dyadic grid (float intervals fed by
exact values) or at single rational points with ``Enclosure`` arithmetic.
Grid points whose intervals overlap are re-checked exactly; a point that
still cannot be separated counts as a violation.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from ..analysis import extrema, local_max_value
from ..bateman import bateman_derivative, bateman_poly, falpha, h_fn
from ..exactpoly import Enclosure, ExpPoly, RatPoly, eval_enclosed, exp_neg, sqrt_enclosure
from ..reports import BoundReport, Violation
from .envelopes import envelope_E
from .grid import IntervalArray, eval_grid, grid_points

EXACT_BITS = 160
DEFAULT_DENSITY = 256


class DomainError(ValueError):
    """Requested n range or mode lies outside a bound's validity domain."""


# --- evaluators ------------------------------------------------------------------------

def _fn(kind: str, k: int, alpha: int = 0) -> ExpPoly:
    if kind == "F":
        return bateman_poly(k).rep
    if kind == "Fp":
        return bateman_derivative(k)
    if kind == "Fa":
        return falpha(k, alpha).rep
    if kind == "H":
        return h_fn(k)
    if kind == "Hp":
        return h_fn(k).derivative()
    if kind == "e2":
        return ExpPoly(Fraction(2), RatPoly.const(1))
    raise KeyError(kind)


@lru_cache(maxsize=48)
def _grid_values(kind: str, k: int, alpha: int, D: int, j_max: int) -> IntervalArray:
    return eval_grid(_fn(kind, k, alpha), np.arange(1, j_max + 1, dtype=np.int64), D)


class GridEval:
    """Values on t = j / D for a contiguous block of j inside 1..j_max."""

    def __init__(self, j: np.ndarray, D: int, j_max: int):
        self.j, self.D, self.j_max = j, D, j_max
        tv = j.astype(float) / D  # exact: D is a power of two
        self.t = IntervalArray(tv, tv.copy())
        self._idx = j - 1

    def _get(self, kind: str, k: int, alpha: int = 0) -> IntervalArray:
        return _grid_values(kind, k, alpha, self.D, self.j_max)[self._idx]

    def F(self, k):
        return self._get("F", k)

    def Fp(self, k):
        return self._get("Fp", k)

    def Fa(self, k, alpha):
        return self._get("Fa", k, alpha)

    def H(self, k):
        return self._get("H", k)

    def Hp(self, k):
        return self._get("Hp", k)

    def exp_neg2t(self):
        return self._get("e2", 0)

    def const(self, x):
        return IntervalArray.const(x, self.t.lo.shape)


class ExactEval:
    """Values at a single rational t as enclosures."""

    def __init__(self, t: Fraction, bits: int = EXACT_BITS):
        self.t = Enclosure.point(t)
        self._t, self.bits = t, bits

    def _get(self, kind, k, alpha=0):
        return eval_enclosed(_fn(kind, k, alpha), self._t, self.bits)

    def F(self, k):
        return self._get("F", k)

    def Fp(self, k):
        return self._get("Fp", k)

    def Fa(self, k, alpha):
        return self._get("Fa", k, alpha)

    def H(self, k):
        return self._get("H", k)

    def Hp(self, k):
        return self._get("Hp", k)

    def exp_neg2t(self):
        return exp_neg(2 * self._t, self.bits)

    def const(self, x):
        return x if isinstance(x, Enclosure) else Enclosure.point(x)


def _sqrt(x):
    return x.sqrt(EXACT_BITS) if isinstance(x, Enclosure) else x.sqrt()


def _ipow(x, k: int):
    out = x
    for _ in range(k - 1):
        out = out * x
    return out


SQRT2 = sqrt_enclosure(2, EXACT_BITS)


# --- catalog ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Clause:
    label: str
    lhs: Callable
    rhs: Callable
    strict: bool
    n_min: int = 1
    t_min: Fraction = Fraction(0)  # exclusive
    t_max: Optional[Callable[[int], Fraction]] = None  # default: 4n (F) or 8 (H)
    t_max_inclusive: bool = True


@dataclass(frozen=True)
class BoundSpec:
    id: str
    statement: str
    scale: str  # "F" or "H": sample sites and default t extent
    clauses: tuple[Clause, ...]
    critical: Optional[str] = None  # "F" or "H" when a critical-point clause exists
    param: Optional[str] = None

    @property
    def strictness(self) -> str:
        kinds = {c.strict for c in self.clauses}
        if self.critical:
            kinds.add(False)
        return "strict" if kinds == {True} else ("non-strict" if kinds == {False} else "mixed")


def _c(label, lhs, rhs, strict, **kw) -> Clause:
    return Clause(label, lhs, rhs, strict, **kw)


def _two_n(n):
    return Fraction(2 * n)


CATALOG: dict[str, BoundSpec] = {}


def _add(spec: BoundSpec) -> None:
    CATALOG[spec.id] = spec


_add(BoundSpec("B6", "|F_n(t)| <= sqrt(1 - exp(-2t))", "F", (
    _c("weak", lambda e, n, a: abs(e.F(n)), lambda e, n, a: _sqrt(1 - e.exp_neg2t()), False),)))
_add(BoundSpec("B16", "|F_n(t)| <= 2n/t, n > 2", "F", (
    _c("2n/t", lambda e, n, a: abs(e.F(n)), lambda e, n, a: 2 * n / e.t, False, n_min=3),)))
_add(BoundSpec("B17", "|F_n'(t)| <= n/t, n > 2", "F", (
    _c("n/t", lambda e, n, a: abs(e.Fp(n)), lambda e, n, a: n / e.t, False, n_min=3),)))
_add(BoundSpec("B18", "|F_n(t)| <= 1", "F", (
    _c("trivial", lambda e, n, a: abs(e.F(n)), lambda e, n, a: e.const(1), False),)))
_add(BoundSpec("B26", "F_n(t)^2 < 4t/(2n - t) on (0, 2n)", "F", (
    _c("critical region", lambda e, n, a: e.F(n).square(), lambda e, n, a: 4 * e.t / (2 * n - e.t), True,
       t_max=_two_n, t_max_inclusive=False),)))
_add(BoundSpec("B28", "exp(-x/2)|L_n(x)| < 1 for x > 0 (x = 2t)", "F", (
    _c("Szego", lambda e, n, a: abs(e.Fa(n, 0)), lambda e, n, a: e.const(1), True),)))
_add(BoundSpec("B32", "exp(-x/2)|L_n^(a)(x)| < ((n+a)/x)^(a/2) on (0, 4(n+a)] (x = 2t)", "F", (
    _c("Laguerre", lambda e, n, a: abs(e.Fa(n, a)),
       lambda e, n, a: (_ipow((n + a) / (2 * e.t), a // 2) if a % 2 == 0
                        else _ipow(_sqrt((n + a) / (2 * e.t)), a)),
       True, t_max=None),), param="alpha"))
_add(BoundSpec("B34", "|F_n(t)| < sqrt(2t/n) on (0, 2n)", "F", (
    _c("sqrt", lambda e, n, a: abs(e.F(n)), lambda e, n, a: _sqrt(2 * e.t / n), True,
       t_max=_two_n, t_max_inclusive=False),)))
_add(BoundSpec("B39", "|F_n(t_k)| <= sqrt(2) n / t_k at critical points", "F", (), critical="F"))
_add(BoundSpec("B46", "|F_n'(t)| < 2 for t > 0", "F", (
    _c("derivative", lambda e, n, a: abs(e.Fp(n)), lambda e, n, a: e.const(2), True),)))
_add(BoundSpec("B0N", "|F_n^(0)(t)| <= (n+1)/(sqrt(2) t)", "F", (
    _c("F^(0)", lambda e, n, a: abs(e.Fa(n, 0)), lambda e, n, a: (n + 1) / (e.const(SQRT2) * e.t), False),)))
_add(BoundSpec("B44", "|F_n(t)| < E(n), n >= 33", "F", (
    _c("envelope", lambda e, n, a: abs(e.F(n)), lambda e, n, a: e.const(envelope_E(n)), True, n_min=33),)))
_add(BoundSpec("BH1", "|H_n| <= 2/t, < sqrt(4t/(2-t)) on (0,2), < sqrt(2t), <= sqrt(2)/t_k at critical points", "H", (
    _c("2/t", lambda e, n, a: abs(e.H(n)), lambda e, n, a: 2 / e.t, False, n_min=3),
    _c("sqrt(4t/(2-t))", lambda e, n, a: abs(e.H(n)), lambda e, n, a: _sqrt(4 * e.t / (2 - e.t)), True,
       t_max=lambda n: Fraction(2), t_max_inclusive=False),
    _c("sqrt(2t)", lambda e, n, a: abs(e.H(n)), lambda e, n, a: _sqrt(2 * e.t), True),
), critical="H"))
_add(BoundSpec("BH2", "|H_n(t)|^2 <= 1/(t(t-2)) for t > 2", "H", (
    _c("large t", lambda e, n, a: e.H(n).square(), lambda e, n, a: 1 / (e.t * (e.t - 2)), False,
       t_min=Fraction(2)),)))
_add(BoundSpec("BH3", "H_n(t) <= 4/((t-2)^2 n) for t > 2", "H", (
    _c("mean value", lambda e, n, a: e.H(n), lambda e, n, a: 4 / ((e.t - 2).square() * n), False,
       t_min=Fraction(2)),)))
_add(BoundSpec("BH4", "|H_n'(t)| <= 2n and |H_n'(t)| <= n/t", "H", (
    _c("2n", lambda e, n, a: abs(e.Hp(n)), lambda e, n, a: e.const(2 * n), False),
    _c("n/t", lambda e, n, a: abs(e.Hp(n)), lambda e, n, a: n / e.t, False),
)))

BOUND_IDS = tuple(CATALOG)


def _t_max(spec: BoundSpec, c: Clause, n: int, alpha: int) -> Fraction:
    if spec.id == "B32":
        return Fraction(2 * (n + alpha))
    if c.t_max is not None:
        return c.t_max(n)
    return Fraction(4 * n) if spec.scale == "F" else Fraction(8)


# --- per-n verification ----------------------------------------------------------------

@dataclass
class _Partial:
    violations: list = field(default_factory=list)
    worst: Optional[Enclosure] = None
    samples: int = 0
    excluded: list = field(default_factory=list)

    def margin(self, m: Enclosure) -> None:
        if self.worst is None or m.lo < self.worst.lo:
            self.worst = m


@lru_cache(maxsize=256)
def _extrema(n: int):
    return extrema(n)


def _sites(spec: BoundSpec, n: int) -> list[Fraction]:
    ext = _extrema(n)
    encs = list(ext.zero_set.zeros) + list(ext.critical_points)
    scale = 1 if spec.scale == "F" else n
    return [e.mid / scale for e in encs]


def _ok(lhs, rhs, strict: bool):
    return lhs.certainly_lt(rhs) if strict else lhs.certainly_le(rhs)


def _exact_point(c: Clause, n: int, alpha: int, t: Fraction, part: _Partial) -> None:
    ev = ExactEval(t)
    lhs, rhs = c.lhs(ev, n, alpha), c.rhs(ev, n, alpha)
    part.samples += 1
    part.margin(rhs - lhs)
    if not _ok(lhs, rhs, c.strict):
        violated = lhs.certainly_ge(rhs) if c.strict else lhs.certainly_gt(rhs)
        part.violations.append(Violation(n, t, lhs, rhs, "violated" if violated else "undecided"))


def _check_clause_grid(spec, c: Clause, n: int, alpha: int, D: int, part: _Partial) -> None:
    t_max = _t_max(spec, c, n, alpha)
    j = grid_points(D, c.t_min, t_max, max_inclusive=c.t_max_inclusive)
    if len(j) == 0:
        return
    full = _t_max(spec, Clause("", None, None, False), n, alpha) if spec.id != "B32" else t_max
    j_max = max(int(full * D), int(j[-1]))
    ev = GridEval(j, D, j_max)
    lhs, rhs = c.lhs(ev, n, alpha), c.rhs(ev, n, alpha)
    margin = rhs - lhs
    k = int(np.argmin(margin.lo))
    part.margin(margin.enclosure(k))
    part.samples += len(j)
    good = lhs.certainly_lt(rhs) if c.strict else lhs.certainly_le(rhs)
    for i in np.nonzero(~good)[0]:
        _exact_point(c, n, alpha, Fraction(int(j[i]), D), part)
        part.samples -= 1


def _check_clause_exact(spec, c: Clause, n: int, alpha: int, D: int, part: _Partial) -> None:
    t_max = _t_max(spec, c, n, alpha)
    for jj in grid_points(D, c.t_min, t_max, max_inclusive=c.t_max_inclusive):
        _exact_point(c, n, alpha, Fraction(int(jj), D), part)


def _in_domain(spec, c: Clause, n: int, alpha: int, t: Fraction) -> bool:
    t_max = _t_max(spec, c, n, alpha)
    return t > c.t_min and (t <= t_max if c.t_max_inclusive else t < t_max)


def _check_critical(spec: BoundSpec, n: int, part: _Partial) -> None:
    ext = _extrema(n)
    for c in ext.critical_points:
        val = local_max_value(n, c)
        site = c if spec.critical == "F" else c / n
        rhs = SQRT2 * (n if spec.critical == "F" else 1) / site
        part.samples += 1
        part.margin(rhs - val)
        if not val.certainly_le(rhs):
            reason = "violated" if val.certainly_gt(rhs) else "undecided"
            part.violations.append(Violation(n, site, val, rhs, reason))


def check_n(bound_id: str, n: int, mode: str, density: int, alpha: int) -> _Partial:
    spec = CATALOG[bound_id]
    part = _Partial()
    for c in spec.clauses:
        if mode == "critical_points":
            break
        if n < c.n_min:
            part.excluded.append((c.label, n))
            continue
        if mode == "grid":
            _check_clause_grid(spec, c, n, alpha, density, part)
        else:
            _check_clause_exact(spec, c, n, alpha, density, part)
        for t in _sites(spec, n):
            if _in_domain(spec, c, n, alpha, t):
                _exact_point(c, n, alpha, t, part)
    if spec.critical:
        _check_critical(spec, n, part)
    return part


def _jobs(jobs: Optional[int]) -> int:
    if jobs is not None:
        return max(1, jobs)
    return max(1, int(os.environ.get("BATEMAN_JOBS", "1")))


def verify_bound(
    bound_id: str,
    n_range: tuple[int, int] = (1, 50),
    mode: str = "grid",
    density: Optional[int] = None,
    alpha: Optional[int] = None,
    jobs: Optional[int] = None,
) -> BoundReport:
    """Check one catalog bound for n_range[0] <= n <= n_range[1].

    mode is "grid" (density points per unit, default 256), "exact" (every
    sample in exact enclosure arithmetic, default density 4) or
    "critical_points" (B39 and BH1 only).  B32 takes the Laguerre parameter
    alpha (default 1).
    """
    if bound_id not in CATALOG:
        raise ValueError(f"unknown bound id {bound_id!r}; known: {', '.join(BOUND_IDS)}")
    spec = CATALOG[bound_id]
    if mode not in ("grid", "exact", "critical_points"):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == "critical_points" and not spec.critical:
        raise DomainError(f"{bound_id} has no critical-point clause")
    if spec.param == "alpha":
        alpha = 1 if alpha is None else alpha
    else:
        alpha = 0
    lo, hi = n_range
    if lo > hi:
        raise DomainError(f"empty n range {n_range}")
    density = density or (DEFAULT_DENSITY if mode == "grid" else 4)
    ns = list(range(lo, hi + 1))
    if spec.id == "B32":
        valid = [n for n in ns if n + alpha > 0]
    else:
        n_need = min([c.n_min for c in spec.clauses] + ([1] if spec.critical else []))
        valid = [n for n in ns if n >= n_need]
    if mode == "critical_points":
        valid = [n for n in valid if n >= 1]
    if not valid:
        raise DomainError(f"{bound_id}: no n in {n_range} lies in the validity domain")
    sampling = {"grid": f"grid({density}/unit)", "exact": f"exact({density}/unit)",
                "critical_points": "critical points"}[mode]
    if spec.critical and mode == "grid" and not spec.clauses:
        sampling = "critical points"
    rep = BoundReport(bound_id if alpha == 0 else f"{bound_id}[alpha={alpha}]", (lo, hi), sampling)
    rep.excluded.extend(n for n in ns if n not in valid)
    k = _jobs(jobs)
    if k > 1 and len(valid) > 1:
        with ProcessPoolExecutor(k) as pool:
            parts = list(pool.map(check_n, [bound_id] * len(valid), valid, [mode] * len(valid),
                                  [density] * len(valid), [alpha] * len(valid)))
    else:
        parts = [check_n(bound_id, n, mode, density, alpha) for n in valid]
    for p in parts:
        rep.violations.extend(p.violations)
        rep.samples += p.samples
        rep.excluded.extend(p.excluded)
        if p.worst is not None:
            rep.note_margin(p.worst)
    return rep


def dominance_check(n_range: tuple[int, int] = (1, 50), density: int = DEFAULT_DENSITY) -> BoundReport:
    """rhs(B34) = sqrt(2t/n) <= rhs(B26) = sqrt(4t/(2n - t)) on the common domain (0, 2n)."""
    rep = BoundReport("B34<=B26", n_range, f"grid({density}/unit)")
    b34 = CATALOG["B34"].clauses[0].rhs
    b26 = CATALOG["B26"].clauses[0].rhs
    for n in range(n_range[0], n_range[1] + 1):
        j = grid_points(density, Fraction(0), Fraction(2 * n), max_inclusive=False)
        ev = GridEval(j, density, int(j[-1]))
        r34, r26 = b34(ev, n, 0), _sqrt(b26(ev, n, 0))
        margin = r26 - r34
        rep.samples += len(j)
        rep.note_margin(margin.enclosure(int(np.argmin(margin.lo))))
        for i in np.nonzero(~r34.certainly_le(r26))[0]:
            t = Fraction(int(j[i]), density)
            ex = ExactEval(t)
            a, b = b34(ex, n, 0), _sqrt(b26(ex, n, 0))
            if not a.certainly_le(b):
                rep.violations.append(Violation(n, t, a, b, "undecided"))
    return rep
