"""The envelope E(n) of max |F_n|, the zero-ratio bound e(n), and their thresholds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Union

from ..exactpoly import DEFAULT_BITS, Enclosure, e_over_sqrt2, sqrt_enclosure, two_over_e

Real = Union[int, Fraction]


class EnvelopeError(ValueError):
    """E(n) is undefined: the radicand 2n - 3/2 - 8 sqrt(2) sqrt(n-1) is not positive."""


def _frac(n: Real) -> Fraction:
    return n if isinstance(n, Fraction) else Fraction(n)


def envelope_e(n: Real, bits: int = DEFAULT_BITS) -> Enclosure:
    """e(n) = 2 - 3/(2n) - 8 sqrt(2) sqrt(n-1) / n, lower bound for T_n / n (n >= 33)."""
    n = _frac(n)
    if n < 1:
        raise ValueError("e(n) needs n >= 1")
    s = sqrt_enclosure(2, bits) * sqrt_enclosure(n - 1, bits)
    return (2 - Fraction(3) / (2 * n) - 8 * s / n).round_out(bits)


def envelope_E(n: Real, bits: int = DEFAULT_BITS) -> Enclosure:
    """E(n), the global bound on |F_n|; raises EnvelopeError for n < 33."""
    n = _frac(n)
    if n < 2:
        raise EnvelopeError(f"E(n) undefined for n = {n}")
    s = 8 * sqrt_enclosure(2, bits) * sqrt_enclosure(n - 1, bits)
    radicand = 2 * n - Fraction(3, 2) - s
    if radicand.lo <= 0:
        raise EnvelopeError(f"E(n) undefined for n = {n}: radicand {radicand!r} not positive")
    r8_2 = Enclosure.point(2).root(8, bits)
    r8_n = Enclosure.point(n).root(8, bits)
    first = 2 * r8_2 / r8_n
    second = (Fraction(3, 2) + s).sqrt(bits) * r8_n / (r8_2 * radicand.sqrt(bits))
    return (first + second).sqrt(bits).round_out(bits)


def envelopes(n: int, bits: int = DEFAULT_BITS) -> tuple[Enclosure, Enclosure]:
    """(E(n), e(n))."""
    return envelope_E(n, bits), envelope_e(n, bits)


@dataclass
class ThresholdReport:
    n0: Enclosure  # root of e(n) = e / sqrt(2)
    E_crossing: tuple[int, int]  # last n with E(n) > 2/e, first with E(n) < 2/e
    e_over_sqrt2: Enclosure
    e_increasing: bool  # checked across the bracket around n0
    E_decreasing: bool  # checked on a window around the crossing
    E_values: tuple[Enclosure, Enclosure]

    def to_json(self) -> dict:
        return {
            "n0": self.n0.to_json(),
            "E_crossing": list(self.E_crossing),
            "e_over_sqrt2": self.e_over_sqrt2.to_json(),
            "e_increasing": self.e_increasing,
            "E_decreasing": self.E_decreasing,
            "E_values": [e.to_json() for e in self.E_values],
        }


def solve_n0(width: Fraction = Fraction(1, 64), bits: int = DEFAULT_BITS) -> Enclosure:
    """Certified bisection for the real root of e(x) = e / sqrt(2) on [2, 2^20]."""
    c = e_over_sqrt2(bits)
    lo, hi = Fraction(2), Fraction(1 << 20)
    if not (envelope_e(lo, bits).certainly_lt(c) and envelope_e(hi, bits).certainly_gt(c)):
        raise ArithmeticError("e(x) - e/sqrt(2) does not change sign on the search interval")
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = envelope_e(mid, bits)
        if v.certainly_lt(c):
            lo = mid
        elif v.certainly_gt(c):
            hi = mid
        else:
            break
    return Enclosure(lo, hi)


def solve_E_crossing(bits: int = DEFAULT_BITS) -> tuple[int, int]:
    """Integer bisection for the n where E(n) drops below 2/e."""
    c = two_over_e(bits)
    lo, hi = 33, 1 << 40
    if not (envelope_E(lo, bits).certainly_gt(c) and envelope_E(hi, bits).certainly_lt(c)):
        raise ArithmeticError("E(n) - 2/e does not change sign on the search interval")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        v = envelope_E(mid, bits)
        if v.certainly_gt(c):
            lo = mid
        elif v.certainly_lt(c):
            hi = mid
        else:
            raise ArithmeticError(f"E({mid}) not separated from 2/e at {bits} bits")
    return lo, hi


def solve_thresholds(bits: int = DEFAULT_BITS) -> ThresholdReport:
    n0 = solve_n0(bits=bits)
    a = floor(n0.lo)
    es = [envelope_e(k, bits) for k in (a - 1, a, a + 1, a + 2)]
    e_inc = all(x.certainly_lt(y) for x, y in zip(es, es[1:]))
    lo, hi = solve_E_crossing(bits)
    Es = [envelope_E(k, bits) for k in (lo - 1, lo, hi, hi + 1)]
    E_dec = all(x.certainly_gt(y) for x, y in zip(Es, Es[1:]))
    return ThresholdReport(n0, (lo, hi), e_over_sqrt2(bits), e_inc, E_dec, (Es[1], Es[2]))
