"""Dense univariate polynomials in x over Q(i).

A polynomial stores its coefficients in ascending order of powers, e.g.
``(c0, c1, c2)`` is c0 + c1*x + c2*x^2.  The top coefficient is never
zero; the zero polynomial has an empty tuple and degree ``None``.
"""

from __future__ import annotations

from .errors import DegreeTooSmall, FieldExtensionNeeded, OddDegree, ZeroDivision
from .exactnum import ZERO, GaussianRational, as_gaussian, try_sqrt

__all__ = ["Polynomial", "X", "asymptotic_sqrt"]


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Polynomial):
            coeffs = coeffs.coeffs
        object.__setattr__(self, "coeffs", _strip([as_gaussian(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    @classmethod
    def _coerce(cls, v):
        if isinstance(v, Polynomial):
            return v
        try:
            return cls.constant(v)
        except TypeError:
            return NotImplemented

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k: int) -> GaussianRational:
        if k < 0:
            raise IndexError("negative power")
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def __eq__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        from .parser import format_polynomial
        return format_polynomial(self)

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __add__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([a[k] + b[k] if k < len(b) else a[k] for k in range(len(a))])

    __radd__ = __add__

    def __sub__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = as_gaussian(c)
        return Polynomial([c * a for a in self.coeffs])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Polynomial.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = Polynomial._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivision("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv_lead = o.leading.inverse()
        if len(rem) <= dq:
            return Polynomial(), Polynomial(rem)
        quot = [ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            quot[k - dq] = c
            if c:
                for j, oj in enumerate(o.coeffs):
                    rem[k - dq + j] = rem[k - dq + j] - c * oj
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        """Division by a nonzero constant only."""
        if isinstance(c, Polynomial):
            if not c.is_constant():
                return NotImplemented
            c = c[0]
        return self.scale(as_gaussian(c).inverse())

    def monic(self) -> Polynomial:
        if not self:
            raise ZeroDivision("zero polynomial has no monic form")
        return self / self.leading

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> Polynomial:
        """Term-by-term integral with zero constant of integration."""
        return Polynomial([ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    # -- evaluation --------------------------------------------------------

    def __call__(self, x0):
        if isinstance(x0, Polynomial):
            return self.compose(x0)
        x0 = as_gaussian(x0)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose(self, q: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def reflect(self) -> Polynomial:
        """p(-x)."""
        return Polynomial([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])


X = Polynomial.monomial(1)


def asymptotic_sqrt(r: Polynomial) -> Polynomial:
    """Polynomial part of sqrt(r) at infinity.

    For deg r = 2*nu returns the degree-nu polynomial s with
    deg(r - s^2) <= nu - 1 whose leading coefficient is the canonical
    root from :func:`try_sqrt`.  Coefficients are fixed top-down: the
    coefficient of x^(2nu-k) in s^2 is 2*s_nu*s_(nu-k) plus products of
    already known coefficients.
    """
    deg = r.degree
    if deg is None or deg < 2:
        raise DegreeTooSmall(f"asymptotic square root needs degree >= 2, got {deg}")
    if deg % 2:
        raise OddDegree(f"degree {deg} is odd")
    nu = deg // 2
    top = try_sqrt(r.leading)
    if top is None:
        raise FieldExtensionNeeded(f"leading coefficient {r.leading} is not a square in Q(i)")
    s = [ZERO] * (nu + 1)
    s[nu] = top
    denom = (2 * top).inverse()
    for k in range(1, nu + 1):
        target = 2 * nu - k
        acc = r[target]
        for i in range(nu - k + 1, nu):
            j = target - i
            if nu - k < j < nu:
                acc = acc - s[i] * s[j]
        s[nu - k] = acc * denom
    result = Polynomial(s)
    tail = r - result * result
    assert tail.degree is None or tail.degree <= nu - 1
    return result
