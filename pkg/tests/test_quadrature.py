from fractions import Fraction

import mpmath
import pytest

from batemanfn.bateman import bateman_poly
from batemanfn.exactpoly import eval_enclosed
from batemanfn.quadrature import QuadratureError, bateman_integral, fourier_integral, fourier_tail_bound


def exact(n, t):
    return float(eval_enclosed(bateman_poly(n).rep, Fraction(t)).mid)


def test_integral_examples():
    assert abs(bateman_integral(0, 0).value - 1) < 1e-12
    assert abs(bateman_integral(1, 1).value + 2 / float(mpmath.e)) < 1e-9
    assert abs(bateman_integral(3, 0).value) < 1e-12


@pytest.mark.parametrize("n", [0, 2, 6, 10])
@pytest.mark.parametrize("t", [0.5, 2.0, 5.0])
def test_integral_matches_exact(n, t):
    r = bateman_integral(n, t)
    assert abs(r.value - exact(n, Fraction(t))) < 1e-8
    assert r.error_estimate <= 1e-9 and r.evaluations > 0


def test_integral_argument_errors():
    with pytest.raises(ValueError):
        bateman_integral(-1, 1)
    with pytest.raises(ValueError):
        bateman_integral(1, -1)
    with pytest.raises(ValueError):
        bateman_integral(1, 1, tol=0)


def test_fourier_examples():
    assert abs(fourier_integral(1, 1).value + 2 / float(mpmath.e)) < 1e-6
    assert abs(fourier_integral(2, 1).value) < 1e-6


@pytest.mark.parametrize("k", [3, 4, 5])
def test_fourier_matches_exact(k):
    r = fourier_integral(k, 1)
    assert abs(r.value - exact(k, 1)) < 1e-6
    assert abs(r.imag) < 1e-6


def test_fourier_other_t():
    assert abs(fourier_integral(2, 3).value - exact(2, 3)) < 1e-6


def test_fourier_truncation_too_small():
    with pytest.raises(QuadratureError, match="tail bound"):
        fourier_integral(1, 1, tol=1e-7, truncation=10)


def test_tail_bound_decreases():
    assert fourier_tail_bound(2, 1, 100) < fourier_tail_bound(2, 1, 10)


def test_fourier_argument_errors():
    with pytest.raises(ValueError):
        fourier_integral(0, 1)
    with pytest.raises(ValueError):
        fourier_integral(1, 0)


def test_two_representations_agree():
    for k in (1, 2, 4):
        assert abs(fourier_integral(k, 2).value - bateman_integral(k, 2).value) < 2e-6


@pytest.mark.parametrize("k", [1, 3, 5])
def test_residue_construction_matches_fourier(k):
    # the two halves of the Fourier representation: exact residue polynomial vs numerical integral
    from batemanfn.bateman import bateman_poly_alt

    for t in (Fraction(1, 2), Fraction(3)):
        res = float(eval_enclosed(bateman_poly_alt(k, "residue").rep, t).mid)
        assert abs(fourier_integral(k, t).value - res) < 1e-6
