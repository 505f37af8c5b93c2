"""Certified zeros, critical points and maxima of F_n.

Positive zeros of F_n are the roots of p_n(t)/t (degree n-1) and critical
points are the roots of q_n = p_n' - p_n (degree n).  Float approximations
seed the isolation; the certificate is exact: n-1 (resp. n) disjoint
brackets with strict sign changes account for every root of the
polynomial.  The brackets must interlace as C_1 < Z_1 < C_2 < ... < Z_{n-1} < C_n < 2n,
which places exactly one critical point between consecutive zeros, so the
global maximum of |F_n| over t > 0 is the largest of the n local maxima.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import roots_genlaguerre

from .bateman import bateman_poly, laguerre_poly
from .exactpoly import (
    DEFAULT_BITS,
    Enclosure,
    RatPoly,
    eval_enclosed,
    isolate_real_roots,
    refine_root,
    sqrt_enclosure,
)
from .exactpoly.roots import descartes_bound_above, sign_at
from .reports import BoundReport, CheckResult

ZERO_WIDTH_BITS = 64


class CertificationError(RuntimeError):
    pass


@dataclass
class ZeroSet:
    n: int
    zeros: list[Enclosure]  # positive zeros, increasing
    T_n: Enclosure  # largest zero; [0, 0] for n = 1
    origin: Enclosure = field(default_factory=lambda: Enclosure(0, 0))


@dataclass
class ExtremaReport:
    n: int
    critical_points: list[Enclosure]
    T_n_star: Enclosure
    max_abs: Enclosure
    local_max_values: list[Enclosure]
    zero_set: ZeroSet

    @property
    def maxima_increasing(self) -> bool:
        vals = self.local_max_values
        return all(a.certainly_lt(b) for a, b in zip(vals, vals[1:]))


# --- float seeds ---------------------------------------------------------------------

def _zero_hints(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0)
    x, _ = roots_genlaguerre(n - 1, 1.0)
    return np.sort(x) / 2.0


def _derivative_sign(n: int, t: np.ndarray) -> np.ndarray:
    """sign of L_n(2t) + L_{n-1}(2t), i.e. of -F_n'(t), by a rescaled recurrence."""
    x = 2.0 * t
    prev = np.ones_like(x)
    cur = 1.0 - x
    for k in range(1, n):
        nxt = ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        prev, cur = cur, nxt
        scale = np.maximum(np.abs(prev), np.abs(cur))
        scale[scale == 0] = 1.0
        big = scale > 1e100
        if big.any():
            prev = np.where(big, prev / scale, prev)
            cur = np.where(big, cur / scale, cur)
    return np.sign(cur + prev) if n >= 1 else np.sign(prev)


def _critical_hints(n: int, zeros: np.ndarray, iterations: int = 64) -> np.ndarray:
    a = np.concatenate(([0.0], zeros))
    b = np.concatenate((zeros, [2.0 * n]))
    sa = _derivative_sign(n, a)
    for _ in range(iterations):
        m = 0.5 * (a + b)
        sm = _derivative_sign(n, m)
        left = sm == sa
        a = np.where(left, m, a)
        sa = np.where(left, sm, sa)
        b = np.where(left, b, m)
    return 0.5 * (a + b)


# --- exact polynomials ----------------------------------------------------------------

@lru_cache(maxsize=512)
def zero_poly(n: int) -> RatPoly:
    """p_n(t)/t, whose roots are the positive zeros of F_n."""
    return bateman_poly(n).poly.shift_down(1)


@lru_cache(maxsize=512)
def critical_poly(n: int) -> RatPoly:
    """q_n = p_n' - p_n, so F_n' = exp(-t) q_n."""
    p = bateman_poly(n).poly
    return p.derivative() - p


def laguerre_zero_poly(n: int) -> RatPoly:
    """L_{n-1}^(1)(2t), built from the Laguerre recurrence (independent of p_n)."""
    return laguerre_poly(n - 1, 1).poly.scale_arg(2)


def _isolate_all(p: RatPoly, hints, expected: int, what: str) -> list[Enclosure]:
    encs = isolate_real_roots(p, hints=[Fraction(float(h)) for h in hints]) if p.degree > 0 else []
    if len(encs) != expected:
        raise CertificationError(f"{what}: expected {expected} real roots, isolated {len(encs)}")
    return encs


def _relative_width(e: Enclosure, bits: int) -> Fraction:
    return max(abs(e.hi), Fraction(1)) / (1 << bits)


def zero_set(n: int, width: Optional[Fraction] = None, refine: bool = True) -> ZeroSet:
    """Certified enclosures of the n-1 positive zeros of F_n.

    Each enclosure is refined below ``width`` (default 2^-64 of max(1, t)).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return ZeroSet(1, [], Enclosure(0, 0))
    p = zero_poly(n)
    encs = _isolate_all(p, _zero_hints(n), n - 1, f"zeros of F_{n}")
    if any(e.lo <= 0 for e in encs):
        raise CertificationError(f"zeros of F_{n}: nonpositive root enclosure")
    if refine:
        encs = [refine_root(p, e, width if width is not None else _relative_width(e, ZERO_WIDTH_BITS))
                for e in encs]
    return ZeroSet(n, encs, encs[-1])


def zero_set_laguerre(n: int, width: Optional[Fraction] = None, use_hints: bool = False) -> ZeroSet:
    """Zeros of F_n from L_{n-1}^(1)(2t) (Laguerre recurrence, general isolation by default)."""
    if n == 1:
        return ZeroSet(1, [], Enclosure(0, 0))
    p = laguerre_zero_poly(n)
    hints = _zero_hints(n) if use_hints else None
    encs = isolate_real_roots(p, hints=None if hints is None else [Fraction(float(h)) for h in hints])
    encs = [refine_root(p, e, width if width is not None else _relative_width(e, ZERO_WIDTH_BITS))
            for e in encs]
    return ZeroSet(n, encs, encs[-1] if encs else Enclosure(0, 0))


def local_max_value(n: int, c: Enclosure, bits: int = DEFAULT_BITS) -> Enclosure:
    """Enclosure of |F_n| at the critical point enclosed by c.

    c must lie in (0, 2n) between two consecutive zeros of F_n, so |F_n| on c
    peaks at the critical point.  Taylor at the critical point with
    F'' = (t - 2n) F / t gives |F(c*)| <= |F(x)| + (n / c.lo) w^2 |F(c*)|.
    """
    f = bateman_poly(n).rep
    x = c.mid
    a = abs(eval_enclosed(f, x, bits))
    w = c.width
    if w == 0:
        return a
    factor = 1 - Fraction(n) * w * w / c.lo
    if factor <= 0:
        raise CertificationError(f"critical point enclosure too wide for n={n}: {c}")
    return Enclosure(a.lo, a.hi / factor).round_out(bits + 8)


def extrema(n: int, width: Optional[Fraction] = None, bits: int = DEFAULT_BITS) -> ExtremaReport:
    """All critical points of F_n with the local maxima of |F_n| and the global maximum."""
    if n < 1:
        raise ValueError("n must be at least 1")
    zs = zero_set(n, refine=False)
    q = critical_poly(n)
    hints = _critical_hints(n, _zero_hints(n))
    crit = _isolate_all(q, hints, n, f"critical points of F_{n}")
    _check_interlacing(n, zs.zeros, crit)
    if width is not None:
        crit = [refine_root(q, c, width) for c in crit]
    vals = [local_max_value(n, c, bits) for c in crit]
    best = max(range(n), key=lambda i: vals[i].hi)
    return ExtremaReport(n, crit, crit[-1], vals[best], vals, zs)


def _check_interlacing(n: int, zeros: list[Enclosure], crit: list[Enclosure]) -> None:
    seq: list[Enclosure] = []
    for i, c in enumerate(crit):
        seq.append(c)
        if i < len(zeros):
            seq.append(zeros[i])
    if crit[0].lo <= 0:
        raise CertificationError(f"F_{n}: first critical point not certified positive")
    for a, b in zip(seq, seq[1:]):
        if not a.hi < b.lo:
            raise CertificationError(f"F_{n}: zeros and critical points do not interlace")
    if not crit[-1].hi < 2 * n:
        raise CertificationError(f"F_{n}: last critical point not certified below 2n")


def largest_critical_point(n: int, zeros_hint: Optional[np.ndarray] = None) -> Enclosure:
    """T_n* alone: a sign-change bracket plus a Descartes count of one root above it."""
    q = critical_poly(n)
    zh = _zero_hints(n) if zeros_hint is None else zeros_hint
    last_gap_start = zh[-1] if len(zh) else 0.0
    a = np.array([last_gap_start])
    b = np.array([2.0 * n])
    sa = _derivative_sign(n, a)
    for _ in range(64):
        m = 0.5 * (a + b)
        sm = _derivative_sign(n, m)
        left = sm == sa
        a = np.where(left, m, a)
        sa = np.where(left, sm, sa)
        b = np.where(left, b, m)
    h = Fraction(float(0.5 * (a[0] + b[0])))
    ints = q.primitive_ints()
    for e in (40, 28, 16, 8):
        delta = h / (1 << e)
        lo, hi = h - delta, h + delta
        if sign_at(ints, lo) * sign_at(ints, hi) < 0 and descartes_bound_above(q, lo) == 1:
            return Enclosure(lo, hi)
    raise CertificationError(f"could not certify the largest critical point of F_{n}")


# --- zero-structure checks -------------------------------------------------------------

def bottema_hahn_rhs(n: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """2n - 3/2 - 8 sqrt(2) sqrt(n-1)."""
    return 2 * n - Fraction(3, 2) - 8 * sqrt_enclosure(2, bits) * sqrt_enclosure(n - 1, bits)


def zero_bound_checks(n: int, ext: Optional[ExtremaReport] = None) -> BoundReport:
    """Largest-zero bounds, Bottema-Hahn, inflection at 2n, increasing maxima, T_n/n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rep = BoundReport("zero_bounds", (n, n), "exact")
    zs = zero_set(n) if ext is None else ext.zero_set
    Tn = zs.T_n
    # (i) T_n < 2n - 1
    m1 = Enclosure.point(2 * n - 1) - Tn
    rep.checks.append(CheckResult("T_n < 2n-1", Tn.certainly_lt(2 * n - 1), m1))
    # (ii) Bottema-Hahn
    if n >= 33:
        rhs = bottema_hahn_rhs(n)
        rep.checks.append(CheckResult("Bottema-Hahn", Tn.certainly_gt(rhs), Tn - rhs))
    # (iii) zeros in [0, 2n) and F'' vanishing with a sign change at t = 2n
    p = bateman_poly(n).poly
    s = p.derivative(2) - p.derivative() * 2 + p
    two_n = Fraction(2 * n)
    below, above = s.sign_at(two_n - Fraction(1, 2)), s.sign_at(two_n + Fraction(1, 2))
    ok3 = Tn.certainly_lt(two_n) and s(two_n) == 0 and below * above < 0
    rep.checks.append(CheckResult("inflection at 2n", ok3, Enclosure.point(two_n) - Tn))
    # (iv) increasing relative maxima
    if ext is None:
        ext = extrema(n)
    vals = ext.local_max_values
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    worst = min(gaps, key=lambda g: g.lo) if gaps else None
    rep.checks.append(CheckResult("increasing maxima", ext.maxima_increasing, worst))
    # (v) T_n / n monitored (data)
    ratio = Tn / n
    rep.checks.append(CheckResult("T_n/n below 2", ratio.certainly_lt(2), Enclosure.point(2) - ratio,
                                  detail=f"T_n/n ~ {float(ratio.mid):.6f}"))
    return rep
