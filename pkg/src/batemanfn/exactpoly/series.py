"""Truncated power series in z whose coefficients are polynomials in t."""

from __future__ import annotations

from typing import Sequence

from .ratpoly import RatPoly


def series_exp(s: Sequence[RatPoly], order: int) -> list[RatPoly]:
    """Coefficients e_0..e_order of exp(s(z)) truncated after z**order.

    Uses k*e_k = sum_{j=1..k} j*s_j*e_{k-j}, which follows from E' = s'E.
    The constant term of ``s`` must vanish so the result stays polynomial.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if s and not s[0].is_zero():
        raise ValueError("series_exp needs a series with zero constant term")
    s = list(s) + [RatPoly()] * max(0, order + 1 - len(s))
    e = [RatPoly.const(1)]
    for k in range(1, order + 1):
        acc = RatPoly()
        for j in range(1, k + 1):
            if not s[j].is_zero():
                acc = acc + s[j] * e[k - j] * j
        e.append(acc / k)
    return e


def series_mul(a: Sequence[RatPoly], b: Sequence[RatPoly], order: int) -> list[RatPoly]:
    out = [RatPoly() for _ in range(order + 1)]
    for i, x in enumerate(a[: order + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out
