"""Exact residual checks for emitted solutions, plus certified numerics.

All pass/fail decisions are exact polynomial identities.  Numerical
evaluation (:func:`eval_solution`) is for inspection only.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext

from .dirac import Coupling, DiracProblem, ReducedODE
from .errors import MixedExponentials, UnsupportedForm, UnverifiableForm
from .exactnum import ONE, GaussianRational, I, Surd, as_gaussian, try_sqrt
from .forms import AffineBasis, ExpSqrtConst, PolyExp, SecondByQuadrature, SolutionForm, as_poly_exp
from .poly import Polynomial

DEFAULT_DIGITS_CAP = 1000


def ode_operator(P: Polynomial, omega: Polynomial, r: Polynomial) -> Polynomial:
    """Polynomial factor of f'' - r f for f = P exp(integral omega)."""
    return (P.derivative().derivative()
            + (omega * P.derivative()).scale(2)
            + (omega.derivative() + omega * omega - r) * P)


def residual(r: Polynomial, sol: SolutionForm) -> Polynomial:
    if isinstance(sol, PolyExp):
        return ode_operator(sol.P, sol.omega, r)
    if isinstance(sol, ExpSqrtConst):
        return Polynomial.constant(sol.c) - r
    if isinstance(sol, AffineBasis):
        return r
    raise UnverifiableForm(f"{type(sol).__name__} has no closed-form residual")


@dataclass(frozen=True)
class ResidualCertificate:
    residual: Polynomial
    equation: ReducedODE | Polynomial
    solution: SolutionForm

    @property
    def passed(self) -> bool:
        return not self.residual


def certify(equation: ReducedODE | Polynomial, sol: SolutionForm) -> ResidualCertificate:
    r = equation.r if isinstance(equation, ReducedODE) else equation
    return ResidualCertificate(residual(r, sol), equation, sol)


# -- first-order system ----------------------------------------------------

@dataclass(frozen=True)
class SpinorCheck:
    passed: bool
    residuals: tuple[Polynomial, Polynomial]
    decoupled: bool


def _ratio(num: list, den: list) -> GaussianRational:
    """Exact value of prod(num)/prod(den) for exact or radical factors.

    Radicals must cancel against an equal radical or pair up into a square.
    """
    num = [v for v in num if v is not None]
    den = [v for v in den if v is not None]
    for d in list(den):
        if isinstance(d, Surd) and d in num:
            num.remove(d)
            den.remove(d)
    value = ONE
    surds = [v for v in num if isinstance(v, Surd)]
    while len(surds) >= 2 and surds[0] == surds[1]:
        value = value * surds[0].square
        num.remove(surds[0])
        num.remove(surds[1])
        surds = surds[2:]
    if any(isinstance(v, Surd) for v in num + den):
        raise UnsupportedForm("radical factors do not cancel; cannot check exactly")
    for v in num:
        value = value * v
    for v in den:
        value = value / v
    return value


def verify_spinor(problem: DiracProblem, psi1: SolutionForm, psi2: SolutionForm) -> SpinorCheck:
    """Check (psi1, psi2) against the first-order system of ``problem``.

    Residuals are the polynomial factors left after removing the common
    exponential (and any constant radical divisors).
    """
    p1, p2 = as_poly_exp(psi1), as_poly_exp(psi2)
    if p1 is None or p2 is None:
        raise UnsupportedForm("spinor components must be of the form P * exp(W)")
    U = problem.U if problem.coupling is Coupling.SCALAR else problem.U.scale(I)
    factor = ONE if problem.coupling is Coupling.SCALAR else I
    own1 = p1.P.derivative() + (p1.omega - U) * p1.P
    own2 = p2.P.derivative() + (p2.omega + U) * p2.P
    if problem.degenerate:
        res = (own1, own2)
        return SpinorCheck(not own1 and not own2, res, True)
    if p1.omega != p2.omega:
        raise MixedExponentials("components carry different exponentials and the coupling is nonzero")
    kappa = problem.coupling_constant
    c12 = _ratio([kappa, p1.over], [p2.over])
    c21 = _ratio([kappa, p2.over], [p1.over])
    res1 = own1 + p2.P.scale(factor * c12)
    res2 = own2 - p1.P.scale(factor * c21)
    return SpinorCheck(not res1 and not res2, (res1, res2), False)


# -- numerics ----------------------------------------------------------------

@dataclass(frozen=True)
class ApproxValue:
    """Real and imaginary parts truncated toward zero to ``digits`` places.

    Every printed digit is correct; requesting more digits only appends.
    """

    re: Decimal
    im: Decimal
    digits: int
    exact: bool = False

    def __str__(self):
        if self.im == 0 and not self.im.is_signed():
            return f"{self.re:f}"
        sign = "-" if self.im.is_signed() else "+"
        return f"{self.re:f} {sign} {abs(self.im):f}*i"


def _iv(iv, q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _endpoints(x) -> tuple[Fraction, Fraction]:
    out = []
    for sign, man, exp, _bc in x._mpi_:
        v = Fraction(int(man)) * (Fraction(2) ** exp)
        out.append(-v if sign else v)
    return out[0], out[1]


def _truncate(q: Fraction, digits: int) -> Decimal:
    scale = 10 ** digits
    units = abs(q.numerator) * scale // q.denominator
    # string construction is exact; arithmetic would round to the context
    return Decimal(f"{'-' if q < 0 else ''}{units}E-{digits}")


def _truncate_interval(x, digits: int) -> Decimal | None:
    lo, hi = _endpoints(x)
    a, b = _truncate(lo, digits), _truncate(hi, digits)
    if a != b:
        return None
    # a zero-straddling interval truncates to 0 on both ends but the sign
    # of the true value is unknown; the exact-zero cases are handled upstream
    if lo < 0 < hi:
        return None
    return a


def _zero_if_tiny(x, digits: int) -> Decimal:
    lo, hi = _endpoints(x)
    if lo <= 0 <= hi and hi - lo < Fraction(1, 10 ** (digits + 50)):
        return _truncate(Fraction(0), digits)
    raise ArithmeticError("precision budget exhausted")


def _parts(iv, p: GaussianRational, exponent_re, exponent_im):
    """Intervals for re and im of p * exp(a + ib)."""
    mag = iv.exp(exponent_re)
    c, s = iv.cos(exponent_im), iv.sin(exponent_im)
    pr, pi = _iv(iv, p.re), _iv(iv, p.im)
    return mag * (pr * c - pi * s), mag * (pr * s + pi * c)


def _sqrt_parts(iv, c: GaussianRational):
    """Interval re and im of the canonical square root of c."""
    mod = iv.sqrt(_iv(iv, c.re) ** 2 + _iv(iv, c.im) ** 2)
    re = iv.sqrt((mod + _iv(iv, c.re)) / 2)
    im = iv.sqrt((mod - _iv(iv, c.re)) / 2)
    if c.im < 0:
        im = -im
    return re, im


def eval_solution(sol: SolutionForm, x0, digits: int, digits_cap: int = DEFAULT_DIGITS_CAP) -> ApproxValue:
    """Value of ``sol`` at the rational point ``x0`` with ``digits`` correct
    decimal places (truncated toward zero).

    Interval arithmetic is repeated at increasing precision until the
    truncated digits are pinned down.  Exact values (exponent zero) are
    returned without rounding.
    """
    if digits < 0 or digits > digits_cap:
        raise ValueError(f"digits must lie in [0, {digits_cap}]")
    x0 = as_gaussian(x0)
    if not x0.is_real():
        raise ValueError("evaluation point must be real")
    if isinstance(sol, (SecondByQuadrature, AffineBasis)):
        raise UnverifiableForm(f"cannot evaluate {type(sol).__name__}")
    if isinstance(sol, ExpSqrtConst) and try_sqrt(sol.c) is not None:
        sol = as_poly_exp(sol)

    radical = None
    if isinstance(sol, PolyExp):
        p = sol.P(x0)
        w = sol.W(x0)
        if isinstance(sol.over, Surd):
            radical = sol.over.square
        elif sol.over is not None:
            p = p / sol.over
        # Lindemann-Weierstrass: p*exp(w) with w != 0 algebraic has a
        # transcendental (hence nonzero, non-decimal) real/imaginary part
        # unless that part vanishes identically, which happens only here.
        exact_re = exact_im = None
        if not p:
            exact_re = exact_im = Fraction(0)
        elif radical is None and not w:
            exact_re, exact_im = p.re, p.im
        elif radical is None and not w.im:
            exact_re = Fraction(0) if not p.re else None
            exact_im = Fraction(0) if not p.im else None

        def compute(iv):
            re, im = _parts(iv, p, _iv(iv, w.re), _iv(iv, w.im))
            if radical is not None:
                sr, si = _sqrt_parts(iv, radical)
                den = sr ** 2 + si ** 2
                re, im = (re * sr + im * si) / den, (im * sr - re * si) / den
            return re, im
    else:
        c, sign = sol.c, sol.sign
        exact_re = exact_im = None
        if x0.re == 0:
            exact_re, exact_im = Fraction(1), Fraction(0)
        elif c.is_real() and c.re > 0:
            exact_im = Fraction(0)

        def compute(iv):
            sr, si = _sqrt_parts(iv, c)
            t = _iv(iv, x0.re) * sign
            return _parts(iv, ONE, sr * t, si * t)

    re_out = None if exact_re is None else _truncate(exact_re, digits)
    im_out = None if exact_im is None else _truncate(exact_im, digits)
    prec = int(digits * 3.33) + 64
    iv = MPIntervalContext()
    while re_out is None or im_out is None:
        iv.prec = prec
        re_iv, im_iv = compute(iv)
        if re_out is None:
            re_out = _truncate_interval(re_iv, digits)
        if im_out is None:
            im_out = _truncate_interval(im_iv, digits)
        prec *= 2
        if prec > 64 * (int(digits * 3.33) + 64):
            if radical is None:
                raise ArithmeticError("precision budget exhausted")
            # radical divisors can hide an exact zero part; accept a
            # zero-straddling interval that is far below the output grain
            re_out = re_out if re_out is not None else _zero_if_tiny(re_iv, digits)
            im_out = im_out if im_out is not None else _zero_if_tiny(im_iv, digits)
    return ApproxValue(re_out, im_out, digits, exact_re is not None and exact_im is not None)
