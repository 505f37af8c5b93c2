"""Dense polynomials over Q and exponentially weighted polynomials e^(-lam*t) p(t)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class RatPoly:
    """Polynomial with rational coefficients, ``coeffs[k]`` multiplies ``t**k``.

    The coefficient tuple is trimmed so that the last entry is nonzero; the
    zero polynomial has an empty tuple.  Instances are immutable.
    """

    __hash__ = None  # type: ignore[assignment]

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c: Scalar) -> "RatPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "RatPoly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "RatPoly":
        return cls((0, 1))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RatPoly.const(other)._c
        return NotImplemented

    def __repr__(self) -> str:
        if not self._c:
            return "RatPoly(0)"
        terms = []
        for k, c in enumerate(self._c):
            if c:
                terms.append(f"{c}" + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return "RatPoly(" + " + ".join(terms) + ")"

    # ring operations
    def __add__(self, other: "RatPoly | Scalar") -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly.const(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return RatPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self._c])

    def __sub__(self, other: "RatPoly | Scalar") -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "RatPoly":
        return RatPoly.const(other) - self

    def __mul__(self, other: "RatPoly | Scalar") -> "RatPoly":
        if isinstance(other, RatPoly):
            a, b = self._c, other._c
            if not a or not b:
                return RatPoly()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return RatPoly(out)
        c = _frac(other)
        return RatPoly([c * x for x in self._c])

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "RatPoly":
        c = _frac(c)
        return RatPoly([x / c for x in self._c])

    def __pow__(self, k: int) -> "RatPoly":
        out = RatPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self, times: int = 1) -> "RatPoly":
        cs = list(self._c)
        for _ in range(times):
            cs = [k * cs[k] for k in range(1, len(cs))]
        return RatPoly(cs)

    def scale_arg(self, c: Scalar) -> "RatPoly":
        """The polynomial t -> p(c*t)."""
        c = _frac(c)
        out, pw = [], Fraction(1)
        for x in self._c:
            out.append(x * pw)
            pw *= c
        return RatPoly(out)

    def shift_up(self, k: int) -> "RatPoly":
        """Multiply by t**k."""
        if not self._c:
            return self
        return RatPoly([0] * k + list(self._c))

    def shift_down(self, k: int) -> "RatPoly":
        """Exact division by t**k; raises if t**k does not divide."""
        if any(self._c[:k]):
            raise ValueError(f"t^{k} does not divide {self!r}")
        return RatPoly(self._c[k:])

    def compose(self, other: "RatPoly") -> "RatPoly":
        out = RatPoly()
        for c in reversed(self._c):
            out = out * other + c
        return out

    # evaluation
    @cached_property
    def _integer_form(self) -> tuple[tuple[int, ...], int]:
        """(integer coefficients, common denominator) with p = ints / den."""
        if not self._c:
            return (), 1
        den = lcm(*(c.denominator for c in self._c))
        return tuple(c.numerator * (den // c.denominator) for c in self._c), den

    def __call__(self, x: Scalar) -> Fraction:
        x = _frac(x)
        ints, den = self._integer_form
        if not ints:
            return Fraction(0)
        return Fraction(homogeneous_horner(ints, x.numerator, x.denominator),
                        den * x.denominator ** (len(ints) - 1))

    def sign_at(self, x: Scalar) -> int:
        x = _frac(x)
        ints, _ = self._integer_form
        if not ints:
            return 0
        v = homogeneous_horner(ints, x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    def primitive_ints(self) -> list[int]:
        """Integer polynomial with the same roots, content removed, leading > 0."""
        from math import gcd

        ints, _ = self._integer_form
        g = 0
        for c in ints:
            g = gcd(g, c)
        if g == 0:
            return []
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]


def homogeneous_horner(ints: Sequence[int], a: int, b: int) -> int:
    """sum ints[i] * a**i * b**(d-i), i.e. b**d * p(a/b) for integer p."""
    d = len(ints) - 1
    if d < 0:
        return 0
    acc = ints[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp *= b
        acc = acc * a + ints[i] * bp
    return acc


@dataclass(frozen=True, eq=True)
class ExpPoly:
    """The function t -> exp(-lam*t) * poly(t) with lam > 0."""

    lam: Fraction
    poly: RatPoly

    def __post_init__(self):
        lam = _frac(self.lam)
        object.__setattr__(self, "lam", lam)
        if lam <= 0:
            raise ValueError(f"decay rate must be positive, got {lam}")
        if not isinstance(self.poly, RatPoly):
            object.__setattr__(self, "poly", RatPoly(self.poly))

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def _same_rate(self, other: "ExpPoly") -> None:
        if other.lam != self.lam and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"decay rates differ: {self.lam} vs {other.lam}")

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        self._same_rate(other)
        lam = other.lam if self.is_zero() else self.lam
        return ExpPoly(lam, self.poly + other.poly)

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + (-other)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(self.lam, -self.poly)

    def __mul__(self, other: "ExpPoly | RatPoly | Scalar") -> "ExpPoly":
        if isinstance(other, ExpPoly):
            return ExpPoly(self.lam + other.lam, self.poly * other.poly)
        return ExpPoly(self.lam, self.poly * other)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "ExpPoly":
        return ExpPoly(self.lam, self.poly / c)

    def derivative(self, times: int = 1) -> "ExpPoly":
        p = self.poly
        for _ in range(times):
            p = p.derivative() - p * self.lam
        return ExpPoly(self.lam, p)

    def scale_arg(self, c: Scalar) -> "ExpPoly":
        """t -> f(c*t) for c > 0."""
        return ExpPoly(self.lam * _frac(c), self.poly.scale_arg(c))

    def at_zero(self) -> Fraction:
        return self.poly[0]


def exp_moment(f: ExpPoly) -> Fraction:
    """Exact value of the integral of f over (0, inf)."""
    lam = f.lam
    total = Fraction(0)
    inv = 1 / lam
    pw = inv
    for k, c in enumerate(f.poly.coeffs):
        if c:
            total += c * factorial(k) * pw
        pw *= inv
    return total


def exp_integral_upto(f: ExpPoly) -> tuple[Fraction, ExpPoly]:
    """Split the integral of f over (0, t) as ``const + g(t)``.

    With Q = sum_j p^(j) / lam^(j+1) an antiderivative of f is -exp(-lam t) Q(t),
    so the integral from 0 to t equals Q(0) - exp(-lam t) Q(t).
    """
    lam = f.lam
    q = RatPoly()
    d = f.poly
    scale = 1 / lam
    while not d.is_zero():
        q = q + d * scale
        d = d.derivative()
        scale /= lam
    return q[0], ExpPoly(lam, -q)
