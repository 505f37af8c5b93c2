"""Bateman functions F_n(t) = exp(-t) p_n(t) and their relatives.

F_n is the n-th Taylor coefficient in z of exp(-t (1+z)/(1-z)).  The
canonical construction is the three-term recurrence in n; every other
representation (explicit sum, 1F1, Laguerre, Rodriguez, residue, generating
function) is implemented independently and used as a cross-check.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Optional, Union

from .exactpoly import (
    DEFAULT_BITS,
    Enclosure,
    ExpPoly,
    RatPoly,
    exp_integral_upto,
    exp_moment,
    exp_neg,
    series_exp,
)

ONE = Fraction(1)
T = RatPoly.t()

METHODS = ("explicit", "hypergeometric", "laguerre_diff", "laguerre_alpha1", "rodriguez", "residue", "genfunc")


@dataclass(frozen=True, eq=False)
class BatemanFn:
    n: int
    rep: ExpPoly

    @property
    def poly(self) -> RatPoly:
        return self.rep.poly

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BatemanFn):
            return NotImplemented
        return self.n == other.n and self.rep == other.rep


@dataclass(frozen=True, eq=False)
class GeneralizedFn:
    """F_n^(alpha)(t) = exp(-t) L_n^(alpha)(2t)."""

    n: int
    alpha: int
    rep: ExpPoly


@dataclass(frozen=True, eq=False)
class LaguerrePoly:
    n: int
    alpha: int
    poly: RatPoly


@dataclass
class IdentityReport:
    identity: str
    n: int
    alpha: Optional[int]
    residual: Union[RatPoly, ExpPoly, tuple]
    passed: bool
    note: str = ""


# --- canonical table -----------------------------------------------------------

class _Table:
    """Append-only cache of p_0, p_1, ... built by the recurrence."""

    def __init__(self):
        self._polys = [RatPoly.const(1), RatPoly((0, -2))]
        self._lock = threading.Lock()

    def upto(self, n: int) -> list[RatPoly]:
        if n >= len(self._polys):
            with self._lock:
                ps = self._polys
                while len(ps) <= n:
                    k = len(ps) - 1
                    # (k+1) F_{k+1} = (2k - 2t) F_k - (k-1) F_{k-1}
                    nxt = (ps[k] * RatPoly((2 * k, -2)) - ps[k - 1] * (k - 1)) / (k + 1)
                    ps.append(nxt)
        return self._polys[: n + 1]


_table = _Table()


def bateman_table(n_max: int) -> list[RatPoly]:
    """Snapshot [p_0, ..., p_{n_max}] of the polynomial parts."""
    return list(_table.upto(n_max))


def bateman_poly(n: int) -> BatemanFn:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return BatemanFn(n, ExpPoly(ONE, _table.upto(n)[n]))


# --- alternative representations ----------------------------------------------

def _explicit(n: int) -> RatPoly:
    cs = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        cs[k] = Fraction((-1) ** k * comb(n, k) * 2 ** k, factorial(k - 1) * n)
    return RatPoly(cs)


def _hypergeometric(n: int) -> RatPoly:
    # 1F1(1-n; 2; 2t) terminates after the (n-1)-th term
    a, b = 1 - n, 2
    term, cs = ONE, []
    for k in range(n):
        cs.append(term)
        term = term * Fraction((a + k) * 2, (b + k) * (k + 1))
    return RatPoly(cs) * RatPoly((0, -2))


def _laguerre_diff(n: int) -> RatPoly:
    prev = laguerre_poly(n - 1, 0).poly if n >= 1 else RatPoly()
    return (laguerre_poly(n, 0).poly - prev).scale_arg(2)


def _laguerre_alpha1(n: int) -> RatPoly:
    return laguerre_poly(n - 1, 1).poly.scale_arg(2) * T * Fraction(-2, n)


def _rodriguez(n: int) -> RatPoly:
    d = ExpPoly(Fraction(2), RatPoly.monomial(n - 1)).derivative(n)
    return d.poly * T / factorial(n)


def _gmul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gpow(a: tuple[Fraction, Fraction], k: int) -> tuple[Fraction, Fraction]:
    out = (ONE, Fraction(0))
    for _ in range(k):
        out = _gmul(out, a)
    return out


def _residue(k: int) -> RatPoly:
    """2i Res_{z=i} exp(itz)(z+i)^(k-1)/(z-i)^(k+1), expanded by Leibniz.

    The residue is (1/k!) d^k/dz^k [exp(itz)(z+i)^(k-1)] at z = i.  The j-th
    derivative of exp(itz) contributes (it)^j exp(-t); the (k-j)-th
    derivative of (z+i)^(k-1) at z = i is (k-1)!/(j-1)! (2i)^(j-1).
    """
    i_unit = (Fraction(0), ONE)
    two_i = (Fraction(0), Fraction(2))
    re, im = [Fraction(0)] * (k + 1), [Fraction(0)] * (k + 1)
    for j in range(1, k + 1):
        falling = Fraction(factorial(k - 1), factorial(j - 1))
        c = _gmul(_gpow(i_unit, j), _gpow(two_i, j - 1))
        c = _gmul(c, (falling * comb(k, j), Fraction(0)))
        c = _gmul(c, (Fraction(0), Fraction(2, factorial(k))))  # 2i / k!
        re[j] += c[0]
        im[j] += c[1]
    if any(im):
        raise ArithmeticError(f"residue representation has imaginary part for k={k}")
    return RatPoly(re)


@lru_cache(maxsize=8)
def _genfunc_table(order: int) -> tuple[RatPoly, ...]:
    # exp(-t(1+z)/(1-z)) = exp(-t) * exp(-2t(z + z^2 + ...))
    s = [RatPoly()] + [RatPoly((0, -2))] * order
    return tuple(series_exp(s, order))


def _genfunc(n: int) -> RatPoly:
    order = max(8, 1 << (n.bit_length()))
    return _genfunc_table(order)[n]


_BUILDERS = {
    "explicit": _explicit,
    "hypergeometric": _hypergeometric,
    "laguerre_diff": _laguerre_diff,
    "laguerre_alpha1": _laguerre_alpha1,
    "rodriguez": _rodriguez,
    "residue": _residue,
    "genfunc": _genfunc,
}


def bateman_poly_alt(n: int, method: str) -> BatemanFn:
    """Build F_n through one of the non-recurrence representations."""
    try:
        build = _BUILDERS[method]
    except KeyError:
        raise ValueError(f"unsupported method {method!r}; choose from {', '.join(METHODS)}") from None
    low = 0 if method in ("genfunc", "laguerre_diff") else 1
    if n < low:
        raise ValueError(f"method {method!r} needs n >= {low}")
    return BatemanFn(n, ExpPoly(ONE, build(n)))


# --- Laguerre polynomials and F^(alpha) -------------------------------------------

@lru_cache(maxsize=None)
def _laguerre_row(alpha: int, n: int) -> tuple[RatPoly, ...]:
    ls = [RatPoly.const(1), RatPoly((1 + alpha, -1))]
    for k in range(1, n):
        nxt = (ls[k] * RatPoly((2 * k + 1 + alpha, -1)) - ls[k - 1] * (k + alpha)) / (k + 1)
        ls.append(nxt)
    return tuple(ls[: n + 1])


def laguerre_poly(n: int, alpha: int) -> LaguerrePoly:
    """L_n^(alpha)(x) from the three-term recurrence in n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = max(16, 1 << n.bit_length())
    return LaguerrePoly(n, alpha, _laguerre_row(alpha, size)[n])


def laguerre_rodriguez_residual(n: int, alpha: int) -> RatPoly:
    """x^alpha exp(-x) L_n^(alpha) minus (1/n!) d^n/dx^n (exp(-x) x^(n+alpha)).

    Both sides are multiplied by x^max(0, -alpha) so that everything is a
    polynomial times exp(-x).  Requires n + alpha >= 0.
    """
    if n + alpha < 0:
        raise ValueError("the Rodriguez formula needs n + alpha >= 0")
    rhs = ExpPoly(ONE, RatPoly.monomial(n + alpha)).derivative(n).poly / factorial(n)
    lag = laguerre_poly(n, alpha).poly
    if alpha >= 0:
        return lag.shift_up(alpha) - rhs
    return lag - rhs.shift_up(-alpha)


def falpha(n: int, alpha: int) -> GeneralizedFn:
    if n < 0:
        return GeneralizedFn(n, alpha, ExpPoly(ONE, RatPoly()))
    return GeneralizedFn(n, alpha, ExpPoly(ONE, laguerre_poly(n, alpha).poly.scale_arg(2)))


def bateman_derivative(n: int) -> ExpPoly:
    """F_n' as -exp(-t)(L_n(2t) + L_{n-1}(2t)), checked against d/dt exp(-t)p_n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    via_laguerre = ExpPoly(ONE, -(laguerre_poly(n, 0).poly + laguerre_poly(n - 1, 0).poly).scale_arg(2))
    formal = bateman_poly(n).rep.derivative()
    if via_laguerre != formal:
        raise ArithmeticError(f"derivative paths disagree for n={n}")
    return via_laguerre


def h_fn(n: int) -> ExpPoly:
    """H_n(t) = (-1)^n F_n(n t) = exp(-n t) (-1)^n p_n(n t)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    f = bateman_poly(n).rep.scale_arg(n)
    return f if n % 2 == 0 else -f


# --- identity suite --------------------------------------------------------------

def _F(n: int) -> ExpPoly:
    if n < 0:
        return ExpPoly(ONE, RatPoly())
    return bateman_poly(n).rep


def _FA(n: int, alpha: int) -> ExpPoly:
    return falpha(n, alpha).rep


def _report(ident: str, n: int, alpha: Optional[int], residual, note: str = "") -> IdentityReport:
    if isinstance(residual, tuple):
        ok = all((r == 0) if isinstance(r, Fraction) else r.is_zero() for r in residual)
    else:
        ok = residual.is_zero()
    return IdentityReport(ident, n, alpha, residual, ok, note)


def alpha_recurrence_residual(n: int, alpha: int, signs: tuple[int, int, int] = (1, 1, 1)) -> ExpPoly:
    """(-1+alpha+n) F_{n-2} + (1-alpha-2n+2t) F_{n-1} + n F_n, each term signed."""
    s0, s1, s2 = signs
    a = _FA(n - 2, alpha) * (s0 * (-1 + alpha + n))
    b = _FA(n - 1, alpha) * (RatPoly((1 - alpha - 2 * n, 2)) * s1)
    c = _FA(n, alpha) * (s2 * n)
    return a + b + c


def energy_residual(n: int) -> tuple[Fraction, ExpPoly]:
    """(F')^2 - 4 - F^2 + (2n/t) F^2 + 2n int_0^t (F/tau)^2 dtau, split by exp rate."""
    p = _F(n).poly
    r = p.shift_down(1)
    const, tail = exp_integral_upto(ExpPoly(Fraction(2), r * r))
    dp = p.derivative() - p
    poly_part = dp * dp - p * p + p * r * (2 * n) + tail.poly * (2 * n)
    return Fraction(-4) + 2 * n * const, ExpPoly(Fraction(2), poly_part)


def identity_suite(n: int, alpha: int = -1) -> list[IdentityReport]:
    """Exact residuals of the differential, difference and Laguerre identities."""
    if n < 1:
        raise ValueError("n must be at least 1")
    F, Fm, Fp = _F(n), _F(n - 1), _F(n + 1)
    dF, d2F = F.derivative(), F.derivative(2)
    out = []
    out.append(_report("a", n, None, d2F * T - F * RatPoly((-2 * n, 1))))
    out.append(_report("b", n, None, RatPoly((F.at_zero(), dF.at_zero() + 2))))
    out.append(_report("c", n, None, (F - Fm) * (n - 1) + (F - Fp) * (n + 1) - F * RatPoly((0, 2))))
    out.append(_report("d", n, None, Fp * (n + 1) - Fm * (n - 1) - dF * RatPoly((0, 2))))
    out.append(_report("e", n, None, dF - Fp.derivative() - F - Fp))
    out.append(_report("f12", n, None, F - _FA(n, -1)))
    out.append(_report("f13", n, None, F + _FA(n - 1, 1) * RatPoly((0, Fraction(2, n)))))
    fa = _FA(n, alpha)
    up, up_m = _FA(n, alpha + 1), _FA(n - 1, alpha + 1)
    out.append(_report("g35", n, alpha, fa - (up - up_m)))
    out.append(_report("g36", n, alpha, fa.derivative() + up + up_m))
    out.append(_report("h", n, alpha,
                       fa * RatPoly((1 + alpha + 2 * n, -1)) + fa.derivative() * (1 + alpha) + fa.derivative(2) * T))
    if n >= 2:
        out.append(_alpha_recurrence_report(n, alpha))
    G = dF
    out.append(_report("j", n, None,
                       G * RatPoly((-4 * n * n, 4 * n, -1)) - G.derivative() * (2 * n)
                       + G.derivative(2) * RatPoly((0, -2 * n, 1))))
    H = h_fn(n)
    out.append(_report("k", n, None, H.derivative(2) * T - H * RatPoly((-2 * n * n, n * n))))
    out.append(_report("l", n, None, energy_residual(n)))
    return out


def _alpha_recurrence_report(n: int, alpha: int) -> IdentityReport:
    res = alpha_recurrence_residual(n, alpha)
    if res.is_zero():
        return _report("i", n, alpha, res)
    holding = [s for s in product((1, -1), repeat=3)
               if s[0] == 1 and alpha_recurrence_residual(n, alpha, s).is_zero()]
    note = "as printed fails; sign variants that hold: " + (", ".join(map(str, holding)) or "none")
    return _report("i", n, alpha, res, note)


# --- integrals -----------------------------------------------------------------------

@dataclass
class IntegralRecord:
    n: int
    m: int
    norm_n: Fraction  # int F_n^2
    product: Fraction  # int F_n F_m
    weighted_norm_n: Fraction  # int (F_n/t)^2
    laplace: dict = field(default_factory=dict)  # z -> (closed form, moment)


def laplace_closed_form(k: int, z: Fraction) -> Fraction:
    """-2/(1+z)^2 ((z-1)/(z+1))^(k-1), the Laplace transform of F_k."""
    z = Fraction(z)
    return Fraction(-2) / (1 + z) ** 2 * ((z - 1) / (z + 1)) ** (k - 1)


def laplace_moment(k: int, z: Fraction) -> Fraction:
    """int_0^inf exp(-z t) F_k(t) dt from the exponential moment with rate 1 + z."""
    z = Fraction(z)
    return exp_moment(ExpPoly(1 + z, _F(k).poly))


def exact_integrals(n: int, m: int, zs: tuple = ()) -> IntegralRecord:
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")
    Fn, Fm = _F(n), _F(m)
    r = Fn.poly.shift_down(1)
    rec = IntegralRecord(
        n=n,
        m=m,
        norm_n=exp_moment(Fn * Fn),
        product=exp_moment(Fn * Fm),
        weighted_norm_n=exp_moment(ExpPoly(Fraction(2), r * r)),
    )
    for z in zs:
        z = Fraction(z)
        if z <= -1:
            raise ValueError("Laplace check needs z > -1")
        rec.laplace[z] = (laplace_closed_form(n, z), laplace_moment(n, z))
    return rec


# --- Parseval partial sums --------------------------------------------------------------

def poly_values_at(t: Fraction, K: int) -> list[Fraction]:
    """Exact p_0(t), ..., p_K(t) by running the recurrence on values."""
    t = Fraction(t)
    vals = [ONE, -2 * t]
    for k in range(1, K):
        vals.append(((2 * k - 2 * t) * vals[k] - (k - 1) * vals[k - 1]) / (k + 1))
    return vals[: K + 1]


def parseval_partial_sums(t: Fraction, K: int, precision: int = DEFAULT_BITS) -> list[Enclosure]:
    """Enclosures of S_j(t) = sum_{k<=j} F_k(t)^2 for j = 0..K."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    w = exp_neg(2 * t, precision + 8)
    s = Fraction(0)
    out = []
    for v in poly_values_at(t, K):
        s += v * v
        out.append(Enclosure(s * w.lo, s * w.hi).round_out(precision + 8))
    return out


def parseval_partial(t: Fraction, K: int, precision: int = DEFAULT_BITS) -> Enclosure:
    if K < 0:
        raise ValueError("K must be nonnegative")
    return parseval_partial_sums(t, K, precision)[-1]
