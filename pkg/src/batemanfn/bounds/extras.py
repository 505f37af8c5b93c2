"""Lemma-1 style estimate at a zero, the C_k ladder for t^k |H_n(t)|, and H_n(2) data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from ..analysis import extrema, local_max_value
from ..bateman import h_fn
from ..exactpoly import DEFAULT_BITS, Enclosure, eval_enclosed
from ..reports import BoundReport, CheckResult, Violation
from .catalog import ExactEval, GridEval
from .grid import grid_points

PValue = Union[int, Fraction, Enclosure]


def lemma1_check(n: int, zero_index: Optional[int] = None, ps: Sequence[PValue] = (1,),
                 bits: int = DEFAULT_BITS) -> BoundReport:
    """h(t*) < 1/p + 2p sqrt((2n - t_n)/t_n) with h = F_n^2, t_n a zero, t* the next critical point.

    zero_index counts positive zeros from 0; default is the largest zero.
    """
    if n < 2:
        raise ValueError("n must be at least 2 (F_1 has no positive zero)")
    ext = extrema(n, bits=bits)
    zeros = ext.zero_set.zeros
    i = len(zeros) - 1 if zero_index is None else zero_index
    if not 0 <= i < len(zeros):
        raise ValueError(f"zero index {i} out of range for n={n}")
    z = zeros[i]
    c = ext.critical_points[i + 1]  # interlacing: C_{i+1} < Z_{i+1} < C_{i+2}
    h = local_max_value(n, c, bits).square()
    ratio_lo = Enclosure.point((2 * n - z.hi) / z.hi).sqrt(bits).lo  # decreasing in t
    rep = BoundReport("lemma1", (n, n), "exact")
    for p in ps:
        pe = p if isinstance(p, Enclosure) else Enclosure.point(p)
        if pe.lo <= 0:
            raise ValueError("p must be positive")
        # each term is monotone in p, so bound them separately over the enclosure
        rhs_lo = 1 / pe.hi + 2 * pe.lo * ratio_lo
        rhs = Enclosure(rhs_lo, rhs_lo)
        ok = h.certainly_lt(rhs_lo)
        rep.checks.append(CheckResult(f"p={float(pe.mid):.6g}", ok, Enclosure(rhs_lo, rhs_lo) - h))
        rep.note_margin(Enclosure(rhs_lo, rhs_lo) - h)
        if not ok:
            rep.violations.append(Violation(n, c, h, rhs, "undecided"))
    return rep


def c_ladder(k_max: int) -> list[int]:
    """C_0 = 1, C_{k+1} = 2 C_k D_k with D_k = 2^k."""
    cs = [1]
    for k in range(k_max):
        cs.append(2 * cs[-1] * 2 ** k)
    return cs


def theorem6_check(k_max: int = 3, n_max: int = 20, t_max: Fraction = Fraction(50),
                   density: int = 256) -> BoundReport:
    """t^k |H_n(t)| <= C_k on the grid 0 < t <= t_max, n <= n_max, k <= k_max."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    cs = c_ladder(k_max)
    t_max = Fraction(t_max)
    rep = BoundReport("C_k ladder", (1, n_max), f"grid({density}/unit)")
    rep.checks.append(CheckResult(f"C = {cs}", True, detail="C_0 = 1, C_{k+1} = 2 C_k 2^k"))
    j = grid_points(density, Fraction(0), t_max)
    j_max = int(j[-1])
    for n in range(1, n_max + 1):
        ev = GridEval(j, density, j_max)
        absH = abs(ev.H(n))
        tpow = ev.const(1)
        for k in range(k_max + 1):
            lhs = absH * tpow
            rhs = ev.const(cs[k])
            margin = rhs - lhs
            rep.samples += len(j)
            rep.note_margin(margin.enclosure(int(np.argmin(margin.lo))))
            for i in np.nonzero(~lhs.certainly_le(rhs))[0]:
                t = Fraction(int(j[i]), density)
                val = abs(ExactEval(t).H(n)) * t ** k
                if not val.certainly_le(cs[k]):
                    rep.violations.append(Violation(n, t, val, Enclosure.point(cs[k]), "undecided"))
            tpow = tpow * ev.t
    return rep


@dataclass
class H2Probe:
    values: list[Enclosure]  # H_1(2), H_2(2), ...
    decreasing: list[Optional[bool]]  # H_n(2) > H_{n+1}(2): True/False when separated, None otherwise

    @property
    def monotone_observed(self) -> bool:
        return all(d is True for d in self.decreasing)


def h2_probe(n_max: int, bits: int = DEFAULT_BITS) -> H2Probe:
    """Enclosures of H_n(2) = (-1)^n F_n(2n) for n = 1..n_max (data only)."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    vals = [eval_enclosed(h_fn(n), Fraction(2), bits) for n in range(1, n_max + 1)]
    dec: list[Optional[bool]] = []
    for a, b in zip(vals, vals[1:]):
        dec.append(True if a.certainly_gt(b) else (False if a.certainly_lt(b) else None))
    return H2Probe(vals, dec)
