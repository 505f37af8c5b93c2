from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batemanfn import bateman as B
from batemanfn.exactpoly import RatPoly, eval_enclosed

mpmath.mp.prec = 200


def mp_of(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def F_oracle(n, t):
    """e^-t (L_n(2t) - L_{n-1}(2t)) through mpmath's Laguerre evaluation."""
    t = t if isinstance(t, mpmath.mpf) else mp_of(t)
    prev = mpmath.laguerre(n - 1, 0, 2 * t) if n >= 1 else 0
    return mpmath.exp(-t) * (mpmath.laguerre(n, 0, 2 * t) - prev)


def test_first_functions():
    assert B.bateman_poly(1).poly == RatPoly((0, -2))
    assert B.bateman_poly(2).poly == RatPoly((0, -2, 2))
    assert B.bateman_poly(4).poly == RatPoly((0, -3, 9, -6, 1)) * Fraction(2, 3)
    assert B.bateman_poly(5).poly == RatPoly((0, -15, 60, -60, 20, -2)) * Fraction(2, 15)


@pytest.mark.parametrize("method", B.METHODS)
def test_every_method_small_n(method):
    for n in range(1, 9):
        assert B.bateman_poly_alt(n, method) == B.bateman_poly(n), (method, n)


def test_method_examples():
    assert B.bateman_poly_alt(2, "explicit").poly == RatPoly((0, -2, 2))
    assert B.bateman_poly_alt(2, "hypergeometric").poly == RatPoly((0, -2, 2))
    assert B.bateman_poly_alt(1, "residue").poly == RatPoly((0, -2))


def test_unknown_method():
    with pytest.raises(ValueError):
        B.bateman_poly_alt(3, "nope")


@pytest.mark.parametrize("n", [1, 2, 3, 7, 15, 30])
@pytest.mark.parametrize("t", [Fraction(1, 3), Fraction(1), Fraction(7, 2), Fraction(20)])
def test_values_against_laguerre_oracle(n, t):
    e = eval_enclosed(B.bateman_poly(n).rep, t)
    x = F_oracle(n, t)
    assert mp_of(e.lo) - mpmath.mpf(10) ** -40 <= x <= mp_of(e.hi) + mpmath.mpf(10) ** -40


@given(st.integers(0, 12), st.integers(-1, 3), st.fractions(min_value=0, max_value=30, max_denominator=16))
@settings(max_examples=50)
def test_laguerre_against_oracle(n, alpha, x):
    if n + alpha < 0:
        return
    v = B.laguerre_poly(n, alpha).poly(x)
    xm = mp_of(x)
    ref = mpmath.fsum((-1) ** k * mpmath.binomial(n + alpha, n - k) * xm ** k / mpmath.factorial(k)
                      for k in range(n + 1))
    assert abs(mp_of(v) - ref) < mpmath.mpf(10) ** -30 * (1 + abs(mp_of(v)))


def test_laguerre_difference_gives_F2():
    L2, L1 = B.laguerre_poly(2, 0).poly, B.laguerre_poly(1, 0).poly
    assert (L2 - L1).scale_arg(2) == B.bateman_poly(2).poly


def test_derivative_examples():
    d1 = B.bateman_derivative(1)
    assert d1.poly == RatPoly((-2, 2))
    for n in range(1, 12):
        assert B.bateman_derivative(n).at_zero() == -2
        assert B.bateman_derivative(n) == B.bateman_poly(n).rep.derivative()


def test_falpha_examples():
    for n in range(0, 8):
        assert B.falpha(n, -1).rep == B.bateman_poly(n).rep
    assert B.falpha(0, 3).rep.poly == RatPoly.const(1)
    assert B.falpha(1, 1).rep.poly == RatPoly((2, -2))


def test_h_fn_value_at_two():
    # H_1(2) = 4 e^-2, H_2(2) = 24 e^-4
    assert abs(mp_of(eval_enclosed(B.h_fn(1), 2).mid) - 4 * mpmath.exp(-2)) < 1e-30
    assert abs(mp_of(eval_enclosed(B.h_fn(2), 2).mid) - 24 * mpmath.exp(-4)) < 1e-30


@pytest.mark.parametrize("ident, n", [("a", 5), ("c", 2), ("k", 3)])
def test_identity_examples(ident, n):
    rep = {r.identity: r for r in B.identity_suite(n)}[ident]
    assert rep.passed


@pytest.mark.parametrize("alpha", [-1, 0, 1, 2])
def test_identity_suite_small(alpha):
    for n in range(1, 10):
        for r in B.identity_suite(n, alpha):
            assert r.passed, (r.identity, n, alpha, r.note)


def test_alpha_recurrence_sign_variants_are_detected():
    # a deliberately wrong sign pattern must leave a nonzero residual
    assert not B.alpha_recurrence_residual(4, 1, (1, -1, 1)).is_zero()


def test_integral_examples():
    assert B.exact_integrals(3, 3).norm_n == 1
    assert B.exact_integrals(2, 5).product == 0
    assert B.exact_integrals(1, 2).product == Fraction(-1, 2)
    assert B.exact_integrals(4, 4).weighted_norm_n == Fraction(1, 2)


def test_laplace_against_quadrature():
    for k in (1, 3, 6):
        z = Fraction(1, 2)
        num = mpmath.quad(lambda t: mpmath.exp(-mp_of(z) * t) * F_oracle(k, t), [0, 10, 40, mpmath.inf])
        assert abs(num - mp_of(B.laplace_closed_form(k, z))) < 1e-20
        assert B.laplace_closed_form(k, z) == B.laplace_moment(k, z)


def test_laplace_domain():
    with pytest.raises(ValueError):
        B.exact_integrals(2, 2, zs=(-1,))


def test_parseval_examples():
    s0 = B.parseval_partial(Fraction(1), 0)
    assert s0.contains(Fraction(0)) is False
    assert mp_of(s0.lo) <= mpmath.exp(-2) <= mp_of(s0.hi)
    with pytest.raises(ValueError):
        B.parseval_partial(Fraction(0), 3)


def test_poly_values_match_polynomials():
    t = Fraction(5, 3)
    vals = B.poly_values_at(t, 12)
    assert vals == [B.bateman_poly(k).poly(t) for k in range(13)]


@given(st.fractions(min_value=Fraction(1, 10), max_value=6, max_denominator=10))
@settings(max_examples=15, deadline=None)
def test_parseval_bounded_and_nondecreasing(t):
    sums = B.parseval_partial_sums(t, 40)
    assert all(a.lo <= b.hi for a, b in zip(sums, sums[1:]))
    assert sums[-1].certainly_lt(1) and sums[0].lo > 0


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        B.bateman_poly(-1)
    with pytest.raises(ValueError):
        B.identity_suite(0)
