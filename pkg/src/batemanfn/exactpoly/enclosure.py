"""Rational interval enclosures and directed-rounded elementary constants.

Everything here is built from integer arithmetic.  Transcendental values
(exp, square roots, k-th roots) come with a proven error bound and are
rounded outward to dyadic rationals, so no float semantics are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .ratpoly import ExpPoly, Scalar, _frac

DEFAULT_BITS = 104  # about 1e-31 relative

Number = Union[int, Fraction, "Enclosure"]


def round_dyadic(q: Fraction, bits: int, up: bool) -> Fraction:
    """Round q to a dyadic rational with about ``bits`` significant bits.

    Rounds toward +inf when ``up`` else toward -inf.
    """
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    shift = bits - (abs(num).bit_length() - den.bit_length())
    if shift >= 0:
        n, d = num << shift, den
    else:
        n, d = num, den << -shift
    m = -((-n) // d) if up else n // d
    if shift >= 0:
        return Fraction(m, 1 << shift)
    return Fraction(m << -shift)


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi] certified to contain some real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _frac(self.lo), _frac(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")

    @classmethod
    def point(cls, x: Scalar) -> "Enclosure":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: "Scalar | Enclosure") -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def certainly_lt(self, other: Number) -> bool:
        return self.hi < _lo(other)

    def certainly_le(self, other: Number) -> bool:
        return self.hi <= _lo(other)

    def certainly_gt(self, other: Number) -> bool:
        return self.lo > _hi(other)

    def certainly_ge(self, other: Number) -> bool:
        return self.lo >= _hi(other)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Enclosure({float(self.lo):.17g}, {float(self.hi):.17g})"

    # interval arithmetic
    def __add__(self, other: Number) -> "Enclosure":
        o = _enc(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: Number) -> "Enclosure":
        return self + (-_enc(other))

    def __rsub__(self, other: Number) -> "Enclosure":
        return _enc(other) - self

    def __mul__(self, other: Number) -> "Enclosure":
        o = _enc(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"reciprocal of {self!r} which contains 0")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: Number) -> "Enclosure":
        return self * _enc(other).reciprocal()

    def __rtruediv__(self, other: Number) -> "Enclosure":
        return _enc(other) * self.reciprocal()

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(0, max(-self.lo, self.hi))

    def square(self) -> "Enclosure":
        a = abs(self)
        return Enclosure(a.lo * a.lo, a.hi * a.hi)

    def sqrt(self, bits: int = DEFAULT_BITS) -> "Enclosure":
        if self.lo < 0:
            raise ValueError(f"sqrt of {self!r} with negative part")
        return Enclosure(sqrt_bound(self.lo, bits, up=False), sqrt_bound(self.hi, bits, up=True))

    def root(self, k: int, bits: int = DEFAULT_BITS) -> "Enclosure":
        if self.lo < 0:
            raise ValueError(f"root of {self!r} with negative part")
        return Enclosure(root_bound(self.lo, k, bits, up=False), root_bound(self.hi, k, bits, up=True))

    def exp_neg(self, bits: int = DEFAULT_BITS) -> "Enclosure":
        """Enclosure of exp(-x) over the interval (exp(-x) is decreasing)."""
        return Enclosure(exp_neg(self.hi, bits).lo, exp_neg(self.lo, bits).hi)

    def round_out(self, bits: int = DEFAULT_BITS) -> "Enclosure":
        return Enclosure(round_dyadic(self.lo, bits, up=False), round_dyadic(self.hi, bits, up=True))

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def to_json(self) -> dict:
        return {
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "mid": float(self.mid),
        }


def _enc(x: Number) -> Enclosure:
    return x if isinstance(x, Enclosure) else Enclosure.point(x)


def _lo(x: Number) -> Fraction:
    return x.lo if isinstance(x, Enclosure) else _frac(x)


def _hi(x: Number) -> Fraction:
    return x.hi if isinstance(x, Enclosure) else _frac(x)


# --- roots -----------------------------------------------------------------

def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_bound(q: Fraction, k: int, bits: int, up: bool) -> Fraction:
    """Dyadic lower (or upper) bound on q ** (1/k) with ~bits precision."""
    q = _frac(q)
    if q < 0:
        raise ValueError("root of a negative number")
    if q == 0:
        return Fraction(0)
    mag = (q.numerator.bit_length() - q.denominator.bit_length()) // k
    s = bits - mag
    scaled = q * Fraction(2) ** (k * s)
    n = math.floor(scaled)
    r = _iroot(n, k)
    exact = r ** k == scaled
    if up and not exact:
        r += 1
    return Fraction(r) / Fraction(2) ** s


def sqrt_bound(q: Fraction, bits: int, up: bool) -> Fraction:
    return root_bound(q, 2, bits, up)


def sqrt_enclosure(q: Scalar, bits: int = DEFAULT_BITS) -> Enclosure:
    return Enclosure.point(q).sqrt(bits)


# --- exponential -----------------------------------------------------------

def _exp_unit(r: Fraction, wbits: int) -> tuple[Fraction, Fraction]:
    """Bounds on exp(r) for 0 <= r <= 1 from the Taylor series plus tail."""
    term = Fraction(1)
    s = Fraction(1)
    k = 0
    eps = Fraction(1, 1 << wbits)
    while True:
        k += 1
        term = term * r / k
        s += term
        # remaining terms sum to at most term * r/(k+1) / (1 - r/(k+1))
        tail = term * r / (k + 1 - r)
        if tail <= eps * s:
            break
    return round_dyadic(s, wbits, up=False), round_dyadic(s + tail, wbits, up=True)


@lru_cache(maxsize=64)
def _e_bounds(wbits: int) -> tuple[Fraction, Fraction]:
    return _exp_unit(Fraction(1), wbits)


@lru_cache(maxsize=4096)
def _e_power(n: int, wbits: int) -> tuple[Fraction, Fraction]:
    lo, hi = _e_bounds(wbits)
    rlo, rhi = Fraction(1), Fraction(1)
    while n:
        if n & 1:
            rlo = round_dyadic(rlo * lo, wbits, up=False)
            rhi = round_dyadic(rhi * hi, wbits, up=True)
        n >>= 1
        if n:
            lo = round_dyadic(lo * lo, wbits, up=False)
            hi = round_dyadic(hi * hi, wbits, up=True)
    return rlo, rhi


@lru_cache(maxsize=65536)
def exp_neg(x: Fraction, bits: int = DEFAULT_BITS) -> Enclosure:
    """Enclosure of exp(-x) for rational x with relative width about 2**-bits."""
    x = _frac(x)
    if x == 0:
        return Enclosure(1, 1)
    if x < 0:
        e = exp_neg(-x, bits)
        return Enclosure(1 / e.hi, 1 / e.lo).round_out(bits + 4)
    n = math.floor(x)
    r = x - n
    wbits = bits + 2 * max(1, n.bit_length()) + 16
    plo, phi = _e_power(n, wbits)
    rlo, rhi = _exp_unit(r, wbits) if r else (Fraction(1), Fraction(1))
    lo = round_dyadic(plo * rlo, wbits, up=False)
    hi = round_dyadic(phi * rhi, wbits, up=True)
    return Enclosure(round_dyadic(1 / hi, bits + 8, up=False), round_dyadic(1 / lo, bits + 8, up=True))


def e_enclosure(bits: int = DEFAULT_BITS) -> Enclosure:
    return exp_neg(Fraction(-1), bits)


def two_over_e(bits: int = DEFAULT_BITS) -> Enclosure:
    return exp_neg(Fraction(1), bits) * 2


def e_over_sqrt2(bits: int = DEFAULT_BITS) -> Enclosure:
    return e_enclosure(bits) / sqrt_enclosure(2, bits)


def eval_enclosed(f: ExpPoly, t: Scalar, precision: int = DEFAULT_BITS) -> Enclosure:
    """Enclosure of exp(-lam t) p(t): exact polynomial value times an exp enclosure."""
    if precision < 8:
        raise ValueError("precision must be at least 8 bits")
    t = _frac(t)
    v = f.poly(t)
    if v == 0:
        return Enclosure(0, 0)
    e = exp_neg(f.lam * t, precision + 8)
    out = Enclosure(v * e.lo, v * e.hi) if v > 0 else Enclosure(v * e.hi, v * e.lo)
    return out.round_out(precision + 8)
