from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batemanfn.exactpoly import (
    Enclosure,
    ExpPoly,
    RatPoly,
    RootIsolationError,
    descartes_bound_above,
    e_over_sqrt2,
    eval_enclosed,
    exp_integral_upto,
    exp_moment,
    exp_neg,
    isolate_real_roots,
    refine_root,
    series_exp,
    series_mul,
    sqrt_enclosure,
    two_over_e,
)

mpmath.mp.prec = 300

T = RatPoly((0, 1))
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)
polys = st.lists(fracs, min_size=0, max_size=7).map(RatPoly)


def mp_of(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(e: Enclosure, x) -> bool:
    return mp_of(e.lo) <= x <= mp_of(e.hi)


# --- ring ---------------------------------------------------------------------------------

def test_additive_inverse():
    assert (T + (-T)).is_zero()


def test_affine_substitution():
    assert RatPoly((0, -2)).scale_arg(2) == RatPoly((0, -4))


def test_product_of_first_two_polynomial_parts():
    assert RatPoly((0, -2)) * RatPoly((0, -2, 2)) == RatPoly((0, 0, 4, -4))


@pytest.mark.parametrize("p, d", [((0, -2), (-2,)), ((0, -2, 2), (-2, 4)), ((7,), ())])
def test_derivative_examples(p, d):
    assert RatPoly(p).derivative() == RatPoly(d)


def test_trailing_zeros_normalised():
    assert RatPoly((1, 2, 0, 0)) == RatPoly((1, 2))
    assert RatPoly((0, 0)).is_zero()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == RatPoly()


@given(polys, polys, fracs)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)
    assert a.compose(b)(x) == a(b(x))


@given(polys, polys)
def test_leibniz(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


# --- exponential moments ------------------------------------------------------------------

def test_moment_examples():
    assert exp_moment(ExpPoly(1, RatPoly((1,)))) == 1
    assert exp_moment(ExpPoly(2, RatPoly((0, 0, 4)))) == 1
    assert exp_moment(ExpPoly(2, RatPoly((0, 0, 4, -4)))) == Fraction(-1, 2)


@given(st.integers(0, 12), st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=20))
def test_moment_of_monomial(k, lam):
    assert exp_moment(ExpPoly(lam, RatPoly.monomial(k))) == factorial(k) / lam ** (k + 1)


@given(polys, st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=20))
def test_moment_of_derivative_is_minus_value_at_zero(p, lam):
    f = ExpPoly(lam, p)
    assert exp_moment(f.derivative()) == -f.at_zero()


@given(polys, st.fractions(min_value=Fraction(1, 2), max_value=3, max_denominator=8))
@settings(max_examples=30)
def test_partial_integral_differentiates_back(p, lam):
    const, g = exp_integral_upto(ExpPoly(lam, p))
    assert g.derivative().poly == p
    assert const + g.at_zero() == 0


def test_exp_poly_rejects_nonpositive_rate():
    with pytest.raises(ValueError):
        ExpPoly(0, RatPoly((1,)))


# --- series -------------------------------------------------------------------------------

def test_series_exp_of_zero():
    assert series_exp([RatPoly()], 3) == [RatPoly.const(1), RatPoly(), RatPoly(), RatPoly()]


def test_series_exp_generating_function_first_terms():
    # exp(-t(1+z)/(1-z)) = e^-t exp(-2t(z + z^2 + ...))
    s = [RatPoly()] + [RatPoly((0, -2))] * 4
    e = series_exp(s, 4)
    assert e[1] == RatPoly((0, -2))
    assert e[2] == RatPoly((0, -2, 2))


def test_series_exp_needs_zero_constant_term():
    with pytest.raises(ValueError):
        series_exp([RatPoly.const(1)], 2)


@given(st.lists(fracs, min_size=1, max_size=4), st.lists(fracs, min_size=1, max_size=4))
@settings(max_examples=30)
def test_exp_of_sum_is_product(a, b):
    sa = [RatPoly()] + [RatPoly.const(x) for x in a]
    sb = [RatPoly()] + [RatPoly.const(x) for x in b]
    n = max(len(sa), len(sb))
    sa += [RatPoly()] * (n - len(sa))
    sb += [RatPoly()] * (n - len(sb))
    order = 5
    lhs = series_exp([x + y for x, y in zip(sa, sb)], order)
    rhs = series_mul(series_exp(sa, order), series_exp(sb, order), order)
    assert lhs == rhs


# --- roots --------------------------------------------------------------------------------

def test_roots_of_t():
    assert isolate_real_roots(T) == [Enclosure(0, 0)]


def test_roots_of_second_factor():
    rs = isolate_real_roots(RatPoly((0, -1, 1)))
    assert [r.lo for r in rs] == [0, 1] and all(r.width == 0 for r in rs)


def test_roots_of_third_quadratic():
    rs = isolate_real_roots(RatPoly((-3, 6, -2)), width=Fraction(1, 10 ** 12))
    s3 = mpmath.sqrt(3)
    assert encloses(rs[0], (3 - s3) / 2) and encloses(rs[1], (3 + s3) / 2)


def test_zero_polynomial_rejected():
    with pytest.raises(RootIsolationError):
        isolate_real_roots(RatPoly())


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6, unique=True))
@settings(max_examples=40, deadline=None)
def test_isolation_of_products_of_linear_factors(roots):
    p = RatPoly.const(1)
    for r in roots:
        p = p * RatPoly((Fraction(-r, 3), 1))
    encs = isolate_real_roots(p)
    assert len(encs) == len(roots)
    for e, r in zip(encs, sorted(Fraction(x, 3) for x in roots)):
        assert e.contains(r)


def test_hints_and_general_route_agree():
    p = RatPoly((-3, 6, -2)) * RatPoly((5, -7, 1))
    hinted = isolate_real_roots(p, hints=[0.6, 0.8, 2.4, 6.2], width=Fraction(1, 2 ** 40))
    general = isolate_real_roots(p, width=Fraction(1, 2 ** 40))
    assert len(hinted) == len(general) == 4
    assert all(a.overlaps(b) for a, b in zip(hinted, general))


def test_bad_hints_fall_back():
    p = RatPoly((-2, 0, 1))
    encs = isolate_real_roots(p, hints=[5.0, 6.0])
    assert len(encs) == 2


def test_refine_root():
    p = RatPoly((-2, 0, 1))
    e = refine_root(p, Enclosure(1, 2), Fraction(1, 2 ** 50))
    assert e.width <= Fraction(1, 2 ** 50) and encloses(e, mpmath.sqrt(2))


def test_descartes_bound():
    p = RatPoly((-3, 6, -2))  # roots ~0.634, ~2.366
    assert descartes_bound_above(p, 2) == 1
    assert descartes_bound_above(p, 3) == 0


# --- enclosures ---------------------------------------------------------------------------

@given(st.fractions(min_value=-30, max_value=60, max_denominator=1000))
@settings(max_examples=60)
def test_exp_neg_encloses_oracle(x):
    e = exp_neg(x)
    assert encloses(e, mpmath.exp(-mp_of(x)))
    assert e.width <= abs(e.hi) * Fraction(1, 2 ** 100)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=1000))
@settings(max_examples=40)
def test_sqrt_encloses_oracle(q):
    assert encloses(sqrt_enclosure(q), mpmath.sqrt(mp_of(q)))


def test_constants():
    assert encloses(two_over_e(), 2 / mpmath.e)
    c = e_over_sqrt2()
    assert encloses(c, mpmath.e / mpmath.sqrt(2))
    assert Fraction("1.92211551407") < c.lo and c.hi < Fraction("1.92211551409")


@given(st.fractions(min_value=0, max_value=10, max_denominator=100),
       st.fractions(min_value=0, max_value=10, max_denominator=100))
def test_interval_ops_contain_point_results(a, b):
    A, B = Enclosure.point(a), Enclosure.point(b)
    assert (A + B).contains(a + b)
    assert (A * B).contains(a * b)
    assert (A - B).contains(a - b)
    if b:
        assert (A / B).contains(a / b)


def test_enclosure_ordering():
    a, b = Enclosure(Fraction(0), Fraction(1)), Enclosure(Fraction(2), Fraction(3))
    assert a.certainly_lt(b) and b.certainly_gt(a)
    assert not a.certainly_lt(Enclosure(Fraction(1, 2), 2))
    with pytest.raises(ValueError):
        Enclosure(Fraction(1), Fraction(0))


def test_eval_examples():
    f0 = ExpPoly(1, RatPoly.const(1))
    assert eval_enclosed(f0, 0) == Enclosure(1, 1)
    f1 = ExpPoly(1, RatPoly((0, -2)))
    assert encloses(eval_enclosed(f1, 1), -2 / mpmath.e)
    f2 = ExpPoly(1, RatPoly((0, -2, 2)))
    e = eval_enclosed(f2, 1)
    assert e.lo == 0 == e.hi


def test_eval_precision_floor():
    with pytest.raises(ValueError):
        eval_enclosed(ExpPoly(1, RatPoly.const(1)), 1, precision=4)
