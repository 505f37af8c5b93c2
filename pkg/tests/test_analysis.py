from fractions import Fraction

import mpmath
import pytest
import sympy

from batemanfn import analysis as A
from batemanfn.bateman import bateman_poly
from batemanfn.exactpoly import Enclosure

mpmath.mp.prec = 200


def mp_of(q):
    return mpmath.mpf(q.numerator) / q.denominator


def contains(e: Enclosure, x) -> bool:
    return mp_of(e.lo) <= x <= mp_of(e.hi)


def sympy_roots(p, digits=40):
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(p.coeffs))
    return sorted(mpmath.mpf(str(r)) for r in sympy.Poly(expr, t).nroots(n=digits) if r.is_real)


def test_zero_examples():
    assert A.zero_set(1).zeros == []
    assert A.zero_set(2).zeros == [Enclosure(1, 1)]
    z3 = A.zero_set(3).zeros
    s3 = mpmath.sqrt(3)
    assert contains(z3[0], (3 - s3) / 2) and contains(z3[1], (3 + s3) / 2)


@pytest.mark.parametrize("n", [4, 9, 16, 25])
def test_zeros_against_sympy(n):
    zs = A.zero_set(n)
    ref = [r for r in sympy_roots(bateman_poly(n).poly) if r > 1e-30]
    assert len(zs.zeros) == len(ref) == n - 1
    for e, r in zip(zs.zeros, ref):
        assert abs(mp_of(e.mid) - r) < 1e-15 * max(1, r)


@pytest.mark.parametrize("n", [2, 5, 13, 30])
def test_zero_routes_agree(n):
    a = A.zero_set(n)
    b = A.zero_set_laguerre(n)
    assert len(a.zeros) == len(b.zeros)
    assert all(x.overlaps(y) for x, y in zip(a.zeros, b.zeros))


def test_zero_width_respected():
    w = Fraction(1, 2 ** 90)
    assert all(z.width <= w for z in A.zero_set(7, width=w).zeros)


def test_extrema_n1():
    ext = A.extrema(1)
    assert ext.T_n_star.contains(1)
    assert contains(ext.max_abs, 2 / mpmath.e)


def test_extrema_n2():
    ext = A.extrema(2)
    s5 = mpmath.sqrt(5)
    assert contains(ext.T_n_star, (3 + s5) / 2)
    assert contains(ext.critical_points[0], (3 - s5) / 2)
    assert Fraction("0.6180") < ext.max_abs.lo and ext.max_abs.hi < Fraction("0.6181")
    ref = 2 * mpmath.exp(-(3 + s5) / 2) * (3 + s5) / 2 * ((3 + s5) / 2 - 1)
    assert contains(ext.max_abs, ref)


@pytest.mark.parametrize("n", [3, 8, 20])
def test_critical_points_against_sympy(n):
    ext = A.extrema(n)
    ref = sympy_roots(A.critical_poly(n))
    assert len(ref) == len(ext.critical_points) == n
    for c, r in zip(ext.critical_points, ref):
        assert contains(Enclosure(c.lo - Fraction(1, 10 ** 20), c.hi + Fraction(1, 10 ** 20)), r)


def test_critical_points_of_F4_below_8():
    assert all(c.certainly_lt(8) and c.lo > 0 for c in A.extrema(4).critical_points)


@pytest.mark.parametrize("n", [5, 12])
def test_max_abs_against_dense_sampling(n):
    ext = A.extrema(n)
    f = lambda t: abs(mpmath.exp(-t) * (mpmath.laguerre(n, 0, 2 * t) - mpmath.laguerre(n - 1, 0, 2 * t)))
    peak = mpmath.findroot(lambda t: mpmath.diff(f, t), float(ext.T_n_star.mid))
    assert contains(ext.max_abs, f(peak))


def test_local_max_value_rejects_wide_enclosure():
    with pytest.raises(A.CertificationError):
        A.local_max_value(3, Enclosure(Fraction(1, 100), Fraction(5)))


def test_largest_critical_point_matches_extrema():
    for n in (2, 10, 40):
        assert A.largest_critical_point(n).overlaps(A.extrema(n).T_n_star)


@pytest.mark.parametrize("n", [1, 2, 10, 33, 40])
def test_zero_bound_checks(n):
    rep = A.zero_bound_checks(n)
    names = {c.name for c in rep.checks}
    assert ("Bottema-Hahn" in names) == (n >= 33)
    assert all(c.passed for c in rep.checks), [(c.name, c.margin) for c in rep.checks]


def test_bad_n():
    with pytest.raises(ValueError):
        A.zero_set(0)
    with pytest.raises(ValueError):
        A.extrema(0)
