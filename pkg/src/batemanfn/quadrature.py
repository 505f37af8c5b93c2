"""Numerical cross-checks of the two oscillatory integral representations of F_n.

Both integrals are evaluated with QUADPACK's Fourier-weight routines
(``scipy.integrate.quad`` with ``weight='cos'`` / ``'sin'``), which integrate
the slowly varying amplitude against the oscillating factor with modified
Clenshaw-Curtis moments.  Results are heuristic; the exact pipeline is the
reference.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from scipy import integrate

Real = Union[int, float, Fraction]


class QuadratureError(RuntimeError):
    pass


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    imag: float = 0.0  # diagnostic: imaginary part where the integrand is complex


def _quad(f, a, b, tol, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            out = integrate.quad(f, a, b, epsabs=tol, epsrel=0.0, full_output=1, **kw)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature did not converge: {exc}") from None
    val, err, info = out[0], out[1], out[2]
    if len(out) > 3 and "QAWF" not in str(out[3]) and out[3]:
        raise QuadratureError(f"quadrature did not converge: {out[3]}")
    return val, err, int(info.get("neval", 0)) if isinstance(info, dict) else 0


def bateman_integral(n: int, t: Real, tol: float = 1e-9) -> QuadResult:
    """(-1)^n (2/pi) int_0^{pi/2} cos(t tan(th) - 2n th) dth, integrated in u = tan(th).

    With phi = 2n arctan u the integrand becomes
    [cos(tu) cos(phi) + sin(tu) sin(phi)] / (1 + u^2) on (0, inf).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    sign = -1.0 if n % 2 else 1.0
    scale = 2.0 / math.pi
    inner = tol / (2 * scale)
    if t == 0:
        val, err, ev = _quad(lambda th: math.cos(2 * n * th), 0.0, math.pi / 2, inner, limit=200)
        return QuadResult(sign * scale * val, scale * err, ev)

    def a(u):
        return math.cos(2 * n * math.atan(u)) / (1.0 + u * u)

    def b(u):
        return math.sin(2 * n * math.atan(u)) / (1.0 + u * u)

    vc, ec, nc = _quad(a, 0.0, np.inf, inner, weight="cos", wvar=t, limlst=200)
    vs, es, ns = _quad(b, 0.0, np.inf, inner, weight="sin", wvar=t, limlst=200)
    err = scale * (ec + es)
    if err > tol:
        raise QuadratureError(f"error estimate {err:.3g} exceeds tol {tol:.3g}")
    return QuadResult(sign * scale * (vc + vs), err, nc + ns)


def fourier_tail_bound(k: int, t: float, R: float) -> float:
    """Bound on (1/pi)|int_{|tau| > R} e^{it tau} g(tau) dtau|, g = (tau+i)^(k-1)/(tau-i)^(k+1).

    |g| = 1/(1+tau^2) and |g'| <= 2k/|tau|^3, so one integration by parts
    bounds each half-line by (1 + k)/(t R^2).
    """
    return 2.0 * (1 + k) / (math.pi * t * R * R)


def fourier_integral(k: int, t: Real, tol: float = 1e-7, truncation: Optional[float] = None) -> QuadResult:
    """(1/pi) Re int_{-R}^{R} e^{it tau} (tau+i)^(k-1) / (tau-i)^(k+1) dtau plus a tail bound.

    Re g is even and Im g odd, so the real part folds onto [0, R] as
    2 int_0^R [cos(t tau) Re g - sin(t tau) Im g].  The imaginary part (zero
    for the exact integral) is computed on both half-lines separately and
    returned as a diagnostic.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    t = float(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if truncation is None:
        R = 1.01 * math.sqrt(2.0 * fourier_tail_bound(k, t, 1.0) / tol)
    else:
        R = float(truncation)
    tail = fourier_tail_bound(k, t, R)
    if tail > tol / 2:
        raise QuadratureError(f"truncation R={R:g} leaves a tail bound of {tail:.3g} > tol/2 = {tol / 2:.3g}")

    def g(tau):
        return (tau + 1j) ** (k - 1) / (tau - 1j) ** (k + 1)

    inner = tol / 8
    vc, ec, nc = _quad(lambda x: g(x).real, 0.0, R, inner, weight="cos", wvar=t, limit=5000)
    vs, es, ns = _quad(lambda x: g(x).imag, 0.0, R, inner, weight="sin", wvar=t, limit=5000)
    value = (2.0 / math.pi) * (vc - vs)
    # imaginary part: int sin(t tau) Re g + cos(t tau) Im g over [-R, R], halves kept apart
    ip, _, n1 = _quad(lambda x: g(x).real, 0.0, R, inner, weight="sin", wvar=t, limit=5000)
    iq, _, n2 = _quad(lambda x: g(x).imag, 0.0, R, inner, weight="cos", wvar=t, limit=5000)
    im, _, n3 = _quad(lambda x: g(-x).real, 0.0, R, inner, weight="sin", wvar=t, limit=5000)
    iw, _, n4 = _quad(lambda x: g(-x).imag, 0.0, R, inner, weight="cos", wvar=t, limit=5000)
    imag = ((ip + iq) + (-im + iw)) / math.pi
    err = (2.0 / math.pi) * (ec + es) + tail
    return QuadResult(value, err, nc + ns + n1 + n2 + n3 + n4, imag)
