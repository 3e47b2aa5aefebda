"""Exact arithmetic over Q and the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  :class:`GaussianRational` pairs two of them and
implements the field operations plus an exact square-root test.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

from .errors import ZeroDivision

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "Surd",
    "I",
    "ZERO",
    "ONE",
    "as_gaussian",
    "rational_sqrt",
    "try_sqrt",
    "as_nonneg_int",
    "surd",
    "square_of",
]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


class GaussianRational:
    """Immutable element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def _coerce(v):
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (int, _RationalABC)):
            return GaussianRational(v)
        return NotImplemented

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- field operations --------------------------------------------------

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivision("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- text --------------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        # Grammar-compatible form: "3/2", "-1+2*i", "-i", "1/2-3/4*i".
        if self.im == 0:
            return str(self.re)
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        if self.re == 0:
            return imag if self.im > 0 else f"-{imag}"
        return f"{self.re}{'+' if self.im > 0 else '-'}{imag}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_gaussian(v) -> GaussianRational:
    g = GaussianRational._coerce(v)
    if g is NotImplemented:
        raise TypeError(f"cannot interpret {v!r} as an element of Q(i)")
    return g


def rational_sqrt(q) -> Fraction | None:
    """Nonnegative square root of ``q`` in Q, or None."""
    q = _as_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


def try_sqrt(c) -> GaussianRational | None:
    """Canonical square root of ``c`` in Q(i), or None if there is none.

    Writing the root as a+bi we need a^2 - b^2 = re(c) and 2ab = im(c).
    Then |c| = a^2 + b^2 must be rational, and a^2 = (re + |c|)/2,
    b^2 = (|c| - re)/2 must both be rational squares.  The returned root
    has a > 0, or a == 0 and b >= 0.
    """
    c = as_gaussian(c)
    if not c:
        return ZERO
    modulus = rational_sqrt(c.norm())
    if modulus is None:
        return None
    a = rational_sqrt((modulus + c.re) / 2)
    b = rational_sqrt((modulus - c.re) / 2)
    if a is None or b is None:
        return None
    if c.im < 0:
        b = -b
    root = GaussianRational(a, b)
    assert root * root == c
    return root


def as_nonneg_int(q) -> int | None:
    """Return n if ``q`` equals a nonnegative integer n, else None.

    Accepts Fractions, ints and real-valued GaussianRationals.
    """
    if isinstance(q, GaussianRational):
        if q.im != 0:
            return None
        q = q.re
    q = _as_fraction(q)
    if q.denominator != 1 or q < 0:
        return None
    return q.numerator


class Surd:
    """The canonical square root of a Gaussian rational that has none in Q(i).

    Used for physical parameters that are only known through their square,
    e.g. E with E^2 = 2 in the Dirac oscillator.  Build with :func:`surd`,
    which returns an exact GaussianRational whenever one exists.
    """

    __slots__ = ("square",)

    def __init__(self, square):
        object.__setattr__(self, "square", as_gaussian(square))

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    def __reduce__(self):
        return (Surd, (self.square,))

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.square == other.square
        return NotImplemented

    def __hash__(self):
        return hash(("surd", self.square))

    def __bool__(self):
        return bool(self.square)

    def is_real(self) -> bool:
        return self.square.is_real() and self.square.re >= 0

    def __repr__(self):
        return f"Surd({self.square!s})"

    def __str__(self):
        return f"sqrt({self.square})"


def surd(square) -> GaussianRational | Surd:
    """Canonical root of ``square``: exact when possible, symbolic otherwise."""
    square = as_gaussian(square)
    root = try_sqrt(square)
    return root if root is not None else Surd(square)


def square_of(v) -> GaussianRational:
    """Square of a GaussianRational or Surd."""
    if isinstance(v, Surd):
        return v.square
    v = as_gaussian(v)
    return v * v
