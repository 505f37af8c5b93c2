"""Sound vectorized evaluation on dyadic grids t_j = j / D.

Function values come from exact integer arithmetic: the polynomial part is
evaluated by homogeneous Horner on numpy object arrays of Python ints, the
exponential factor from a fixed-point table of certified lower and upper
bounds, and the quotient is formed by a single correctly rounded int/int
division followed by a one-ulp outward step.  Everything downstream
(right-hand sides, margins) is float interval arithmetic with outward
widening after every operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import numpy as np

from ..exactpoly import Enclosure, ExpPoly, exp_neg

_INF = np.inf


def _down(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, -_INF)


def _up(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, _INF)


def float_enclosure(e: Enclosure) -> tuple[float, float]:
    """Floats a <= e.lo and b >= e.hi."""
    lo, hi = float(e.lo), float(e.hi)
    if Fraction(lo) > e.lo:
        lo = math.nextafter(lo, -math.inf)
    if Fraction(hi) < e.hi:
        hi = math.nextafter(hi, math.inf)
    return lo, hi


class IntervalArray:
    """Elementwise float intervals [lo, hi] with outward rounding."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)

    @classmethod
    def const(cls, x: Union[int, float, Fraction, Enclosure], shape) -> "IntervalArray":
        if isinstance(x, Enclosure):
            lo, hi = float_enclosure(x)
        else:
            lo, hi = float_enclosure(Enclosure.point(Fraction(x)))
        return cls(np.full(shape, lo), np.full(shape, hi))

    def _lift(self, x) -> "IntervalArray":
        if isinstance(x, IntervalArray):
            return x
        return IntervalArray.const(x, self.lo.shape)

    def __len__(self) -> int:
        return self.lo.shape[0]

    def __getitem__(self, idx) -> "IntervalArray":
        return IntervalArray(self.lo[idx], self.hi[idx])

    def __add__(self, other) -> "IntervalArray":
        o = self._lift(other)
        return IntervalArray(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self) -> "IntervalArray":
        return IntervalArray(-self.hi, -self.lo)

    def __sub__(self, other) -> "IntervalArray":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "IntervalArray":
        return self._lift(other) - self

    def __mul__(self, other) -> "IntervalArray":
        o = self._lift(other)
        ps = np.stack([self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi])
        return IntervalArray(_down(ps.min(axis=0)), _up(ps.max(axis=0)))

    __rmul__ = __mul__

    def reciprocal(self) -> "IntervalArray":
        if np.any((self.lo <= 0) & (self.hi >= 0)):
            raise ZeroDivisionError("interval division by an interval containing 0")
        return IntervalArray(_down(1.0 / self.hi), _up(1.0 / self.lo))

    def __truediv__(self, other) -> "IntervalArray":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other) -> "IntervalArray":
        return self._lift(other) * self.reciprocal()

    def __abs__(self) -> "IntervalArray":
        lo = np.where(self.lo >= 0, self.lo, np.where(self.hi <= 0, -self.hi, 0.0))
        hi = np.maximum(np.abs(self.lo), np.abs(self.hi))
        return IntervalArray(lo, hi)

    def square(self) -> "IntervalArray":
        a = abs(self)
        return IntervalArray(_down(a.lo * a.lo), _up(a.hi * a.hi))

    def sqrt(self, bits: int = 0) -> "IntervalArray":
        if np.any(self.hi < 0):
            raise ValueError("sqrt of a negative interval")
        return IntervalArray(_down(np.sqrt(np.maximum(self.lo, 0.0))), _up(np.sqrt(self.hi)))

    def certainly_lt(self, other) -> np.ndarray:
        return self.hi < self._lift(other).lo

    def certainly_le(self, other) -> np.ndarray:
        return self.hi <= self._lift(other).lo

    def enclosure(self, i: int) -> Enclosure:
        return Enclosure(Fraction(float(self.lo[i])), Fraction(float(self.hi[i])))


class ExpTable:
    """Fixed-point bounds on exp(-m / D) for m = 0..size-1, common denominator 2**K."""

    def __init__(self, D: int, m_max: int, guard: int = 128):
        self.D = D
        self.K = int(math.ceil((m_max / D) * 1.4426950408889634)) + guard
        one = 1 << self.K
        q_max = m_max // D
        e_int = [exp_neg(Fraction(q)) for q in range(q_max + 1)]
        e_frac = [exp_neg(Fraction(r, D)) for r in range(D)]
        m = np.arange(m_max + 1)
        q, r = m // D, m % D
        lo = np.empty(m_max + 1, dtype=object)
        hi = np.empty(m_max + 1, dtype=object)
        for i in range(m_max + 1):
            a, b = e_int[q[i]], e_frac[r[i]]
            x_lo, x_hi = a.lo * b.lo * one, a.hi * b.hi * one
            lo[i] = x_lo.numerator // x_lo.denominator
            hi[i] = -((-x_hi.numerator) // x_hi.denominator)
        self.lo, self.hi, self.m_max = lo, hi, m_max


_TABLES: dict[int, ExpTable] = {}


def exp_table(D: int, m_max: int) -> ExpTable:
    tab = _TABLES.get(D)
    if tab is None or tab.m_max < m_max:
        size = max(m_max, 2 * tab.m_max if tab is not None else 0)
        tab = ExpTable(D, size)
        _TABLES[D] = tab
    return tab


def poly_numerators(f: ExpPoly, j: np.ndarray, D: int) -> tuple[np.ndarray, int]:
    """Integers N_j and M > 0 with poly(j / D) = N_j / M."""
    ints, den = f.poly._integer_form
    d = len(ints) - 1
    jo = j.astype(object)
    if d < 0:
        return np.zeros(len(j), dtype=object), 1
    acc = np.full(len(j), ints[d], dtype=object)
    Dp = 1
    for i in range(d - 1, -1, -1):
        Dp *= D
        acc = acc * jo + ints[i] * Dp
    return acc, den * D ** d


def eval_grid(f: ExpPoly, j: np.ndarray, D: int) -> IntervalArray:
    """Enclosures of f(j / D) for integer j >= 0; f must have integer decay rate."""
    lam = f.lam
    if lam.denominator != 1:
        raise ValueError("grid evaluation needs an integer decay rate")
    lam = int(lam)
    m = j * lam
    tab = exp_table(D, int(m.max()) if len(m) else 0)
    N, M = poly_numerators(f, j, D)
    scale = M << tab.K
    neg = N < 0
    elo, ehi = tab.lo[m], tab.hi[m]
    num_lo = np.where(neg, N * ehi, N * elo)
    num_hi = np.where(neg, N * elo, N * ehi)
    lo = np.array([int(a) / scale for a in num_lo], dtype=float)
    hi = np.array([int(a) / scale for a in num_hi], dtype=float)
    return IntervalArray(_down(lo), _up(hi))


def grid_points(D: int, t_min: Fraction, t_max: Fraction, min_inclusive: bool = False,
                max_inclusive: bool = True) -> np.ndarray:
    """Integers j with t_min < j/D <= t_max (inclusivity configurable)."""
    a = t_min * D
    j0 = math.ceil(a) if min_inclusive else math.floor(a) + 1
    b = t_max * D
    j1 = math.floor(b) if max_inclusive else math.ceil(b) - 1
    return np.arange(max(j0, 0), j1 + 1, dtype=np.int64)
