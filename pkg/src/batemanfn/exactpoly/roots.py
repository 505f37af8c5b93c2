"""Certified real-root isolation for rational polynomials.

Two routes produce the same kind of certificate:

* hinted: approximate roots (e.g. from an eigenvalue solver) are bracketed
  by dyadic points and the brackets are accepted only if the polynomial
  changes sign strictly across each one and the number of brackets equals
  the degree.  A degree-d polynomial with d disjoint sign changes has all
  its roots real and simple, one per bracket.
* general: Descartes' rule of signs with bisection (Vincent-Collins-Akritas)
  on the primitive integer square-free part.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .enclosure import Enclosure
from .ratpoly import RatPoly, Scalar, _frac, homogeneous_horner


class RootIsolationError(ValueError):
    pass


# --- integer polynomial helpers (low -> high coefficient lists) ------------

def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def sign_at(ints: Sequence[int], x: Fraction) -> int:
    return _sign(homogeneous_horner(ints, x.numerator, x.denominator))


def sign_variations(ints: Iterable[int]) -> int:
    v, prev = 0, 0
    for c in ints:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                v += 1
            prev = s
    return v


def taylor_shift(ints: Sequence[int], a: int = 1) -> list[int]:
    """Coefficients of p(x + a)."""
    c = list(ints)
    d = len(c) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _scale(ints: Sequence[int], num: int, den: int) -> list[int]:
    """den**d * p(num/den * x)."""
    d = len(ints) - 1
    out, np_, dp = [], 1, den ** d
    for c in ints:
        out.append(c * np_ * dp)
        np_ *= num
        dp //= den
    return out


def _roots_in_unit(ints: Sequence[int]) -> int:
    """Descartes bound for roots in (0, 1): variations of (1+x)^d p(1/(1+x))."""
    return sign_variations(taylor_shift(list(reversed(ints)), 1))


def descartes_bound_above(p: RatPoly, a: Scalar) -> int:
    """Descartes bound on the number of roots of p in (a, inf)."""
    a = _frac(a)
    ints = p.primitive_ints()
    scaled = _scale(ints, 1, a.denominator)  # den^d p(x/den)
    shifted = taylor_shift(scaled, a.numerator)  # den^d p((x + num)/den)
    return sign_variations(shifted)


def _squarefree(p: RatPoly) -> RatPoly:
    g = _poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, r = _poly_divmod(p, g)
    assert r.is_zero()
    return q


def _poly_divmod(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly]:
    r = list(a.coeffs)
    db, lb = b.degree, b.leading
    q = [Fraction(0)] * max(0, len(r) - db)
    for k in range(len(r) - db - 1, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                r[k + j] -= c * bc
    return RatPoly(q), RatPoly(r[:db])


def _poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, (r / r.leading if not r.is_zero() else r)
    return a / a.leading if not a.is_zero() else a


def _cauchy_bound(ints: Sequence[int]) -> Fraction:
    lead = abs(ints[-1])
    m = max((abs(c) for c in ints[:-1]), default=0)
    b = 1 + Fraction(m, lead)
    k = 0
    while (1 << k) <= b:
        k += 1
    return Fraction(1 << k)


# --- refinement --------------------------------------------------------------

def _refine_one(ints: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> Enclosure:
    """Bisect (lo, hi), which holds exactly one simple root, to the given width."""
    # one endpoint may be a neighbouring root; the other sign suffices
    s_hi = sign_at(ints, hi)
    s_lo = sign_at(ints, lo) if s_hi == 0 else -s_hi
    if s_lo == 0:
        raise RootIsolationError(f"both endpoints of [{lo}, {hi}] are roots")
    while hi - lo > width:
        m = (lo + hi) / 2
        s = sign_at(ints, m)
        if s == 0:
            return Enclosure(m, m)
        if s == s_lo:
            lo = m
        else:
            hi = m
    return Enclosure(lo, hi)


def refine_root(p: RatPoly, enc: Enclosure, width: Scalar) -> Enclosure:
    """Shrink a certified isolating enclosure of a simple root of p."""
    if enc.lo == enc.hi:
        return enc
    return _refine_one(p.primitive_ints(), enc.lo, enc.hi, _frac(width))


# --- isolation ---------------------------------------------------------------

def _vca_positive(ints: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Isolating open intervals for the positive roots of a square-free ints."""
    if sign_variations(ints) == 0:
        return []
    bound = _cauchy_bound(ints)
    base = _scale(ints, bound.numerator, 1)  # p(bound * y)
    out = []
    stack = [(base, Fraction(0), bound)]
    while stack:
        q, a, b = stack.pop()
        v = _roots_in_unit(q)
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        # split at 1/2, nudged away from a root so endpoints are never roots
        num, k = 1, 1
        while homogeneous_horner(q, num, 1 << k) == 0:
            k += 2
            num = (1 << (k - 1)) - 1
        den = 1 << k
        left = _scale(q, num, den)  # p(s*y), s = num/den
        right = taylor_shift(_scale(q, 1, den), num)  # p((y + num)/den)
        right = _scale(right, den - num, 1)  # p((num + (den-num) y)/den)
        m = a + (b - a) * Fraction(num, den)
        stack.append((right, m, b))
        stack.append((left, a, m))
    return out


def _disjoin(ints: Sequence[int], encs: list[Enclosure]) -> list[Enclosure]:
    encs = sorted(encs, key=lambda e: (e.lo, e.hi))
    changed = True
    while changed:
        changed = False
        for i in range(len(encs) - 1):
            a, b = encs[i], encs[i + 1]
            if a.hi >= b.lo:
                if a.width >= b.width and a.width > 0:
                    encs[i] = _refine_one(ints, a.lo, a.hi, a.width / 2)
                else:
                    encs[i + 1] = _refine_one(ints, b.lo, b.hi, b.width / 2)
                changed = True
    return encs


def _from_hints(ints: list[int], hints: Sequence[Scalar]) -> Optional[list[Enclosure]]:
    d = len(ints) - 1
    hs = sorted(_frac(h) if not isinstance(h, float) else Fraction(h) for h in hints)
    if len(hs) != d or len(set(hs)) != d:
        return None
    gaps = [hs[i + 1] - hs[i] for i in range(d - 1)]
    out = []
    for i, h in enumerate(hs):
        room = min([g for g in (gaps[i - 1] if i else None, gaps[i] if i < d - 1 else None) if g is not None],
                   default=max(abs(h), Fraction(1)))
        found = None
        for e in (40, 28, 16, 8, 3):
            delta = max(abs(h), Fraction(1, 1 << 20)) / (1 << e)
            delta = min(delta, room / 3)
            lo = _dyadic_near(h - delta, False)
            hi = _dyadic_near(h + delta, True)
            s_lo, s_hi = sign_at(ints, lo), sign_at(ints, hi)
            if s_lo * s_hi < 0:
                found = Enclosure(lo, hi)
                break
        if found is None:
            return None
        out.append(found)
    for a, b in zip(out, out[1:]):
        if a.hi >= b.lo:
            return None
    return out


def _dyadic_near(x: Fraction, up: bool) -> Fraction:
    from .enclosure import round_dyadic

    if x == 0:
        return Fraction(0)
    return round_dyadic(x, 64, up)


def isolate_real_roots(
    p: RatPoly,
    domain: Optional[tuple[Scalar, Scalar]] = None,
    width: Optional[Scalar] = None,
    hints: Optional[Sequence[Scalar]] = None,
) -> list[Enclosure]:
    """Pairwise disjoint enclosures, one per distinct real root of p.

    ``domain`` restricts to roots in the closed interval [a, b].  ``width``
    refines every enclosure below that width.  ``hints`` are approximate
    roots; when they certify (one strict sign change per hint and as many
    hints as the degree after removing roots at 0) the slow general path is
    skipped, otherwise it is used as fallback.
    """
    if p.is_zero():
        raise RootIsolationError("the zero polynomial has no isolated roots")
    cs = p.coeffs
    m = 0
    while cs[m] == 0:
        m += 1
    core = RatPoly(cs[m:])
    result: list[Enclosure] = [Enclosure(0, 0)] if m else []
    ints = core.primitive_ints()
    if core.degree >= 1:
        encs = None
        if hints is not None:
            encs = _from_hints(ints, [h for h in hints if h != 0])
        if encs is None:
            ints = _squarefree(core).primitive_ints()
            neg_ints = [c if k % 2 == 0 else -c for k, c in enumerate(ints)]
            encs = [Enclosure(a, b) for a, b in _vca_positive(ints)]
            encs += [Enclosure(-b, -a) for a, b in _vca_positive(neg_ints)]
        result = _disjoin(ints, result + encs)
    if domain is not None:
        lo_d, hi_d = (_frac(x) for x in domain)
        result = _clip(ints, result, lo_d, hi_d)
    if width is not None:
        w = _frac(width)
        result = [_refine_one(ints, e.lo, e.hi, w) if e.width > w else e for e in result]
    return result


def _clip(ints: Sequence[int], encs: list[Enclosure], lo: Fraction, hi: Fraction) -> list[Enclosure]:
    out = []
    for e in encs:
        while True:
            if e.hi < lo or e.lo > hi:
                break
            if lo <= e.lo and e.hi <= hi:
                out.append(e)
                break
            cut = lo if e.lo < lo <= e.hi else hi
            s = sign_at(ints, cut)
            if s == 0:
                out.append(Enclosure(cut, cut))
                break
            e = _refine_one(ints, e.lo, e.hi, e.width / 2)
    return out


def certify_sign_change_count(ints: Sequence[int], points: Sequence[Fraction]) -> int:
    """Number of strict sign changes of ints along increasing points."""
    signs = [sign_at(ints, x) for x in points]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def binomial_row(n: int) -> list[int]:
    return [comb(n, k) for k in range(n + 1)]
