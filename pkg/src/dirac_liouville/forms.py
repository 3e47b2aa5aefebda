"""Closed-form solution representations.

Every emitted solution is one of four immutable variants:

* :class:`PolyExp` -- P(x) * exp(integral of omega), optionally divided by a
  radical constant when a Dirac spinor component picks up 1/E or 1/m with
  E or m outside Q(i);
* :class:`ExpSqrtConst` -- exp(+-sqrt(c) x) for constant r = c;
* :class:`AffineBasis` -- the basis {1, x} of f'' = 0;
* :class:`SecondByQuadrature` -- f * integral(f^-2), left unevaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exactnum import GaussianRational, Surd, as_gaussian, try_sqrt
from .parser import format_polynomial
from .poly import Polynomial


@dataclass(frozen=True)
class PolyExp:
    P: Polynomial
    omega: Polynomial
    over: GaussianRational | Surd | None = None

    def __post_init__(self):
        if not self.P:
            raise ValueError("PolyExp needs a nonzero polynomial factor")

    @property
    def W(self) -> Polynomial:
        """Exponent: antiderivative of omega with zero constant term."""
        return self.omega.antiderivative()


@dataclass(frozen=True)
class ExpSqrtConst:
    c: GaussianRational
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", as_gaussian(self.c))
        if not self.c:
            raise ValueError("ExpSqrtConst needs c != 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class AffineBasis:
    pass


@dataclass(frozen=True)
class SecondByQuadrature:
    base: "SolutionForm"


SolutionForm = Union[PolyExp, ExpSqrtConst, AffineBasis, SecondByQuadrature]


def as_poly_exp(sol: SolutionForm) -> PolyExp | None:
    """PolyExp view of ``sol`` when it has one (ExpSqrtConst with exact root)."""
    if isinstance(sol, PolyExp):
        return sol
    if isinstance(sol, ExpSqrtConst):
        root = try_sqrt(sol.c)
        if root is not None:
            return PolyExp(Polynomial.constant(1), Polynomial.constant(sol.sign * root))
    return None


def _wrap(text: str) -> str:
    """Parenthesize ``text`` unless it is a single product term."""
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and k > 0:
            return f"({text})"
        elif depth == 0 and ch == "/" and text[k - 1] == " ":
            return f"({text})"
    return text


def format_solution(sol: SolutionForm) -> str:
    """Human and parser friendly rendering, ``P(x) * exp(W(x))``."""
    if isinstance(sol, PolyExp):
        P, W = format_polynomial(sol.P), sol.W
        if not W:
            text = P
        elif sol.P == 1:
            text = f"exp({format_polynomial(W)})"
        else:
            text = f"{_wrap(P)} * exp({format_polynomial(W)})"
        if sol.over is not None:
            text = f"{text} / {_wrap(str(sol.over))}"
        return text
    if isinstance(sol, ExpSqrtConst):
        sign = "" if sol.sign > 0 else "-"
        return f"exp({sign}sqrt({sol.c})*x)"
    if isinstance(sol, AffineBasis):
        return "{1, x}"
    if isinstance(sol, SecondByQuadrature):
        f = format_solution(sol.base)
        return f"{_wrap(f)} * integral(({f})^-2 dx)"
    raise TypeError(f"not a solution form: {sol!r}")
