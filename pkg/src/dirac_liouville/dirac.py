"""Stationary one-dimensional Dirac problems and their second-order reduction.

Scalar coupling uses alpha = [[0, i], [-i, 0]], beta = [[0, 1], [1, 0]] and
U = m + V, giving the first-order system

    psi1' =  U psi1 - E psi2
    psi2' = -U psi2 + E psi1

and psi_k'' = (+-U' + U^2 - E^2) psi_k.  Vector coupling uses
alpha = diag(1, -1), beta = [[0, 1], [1, 0]] and U = V + E:

    psi1' =  i U psi1 - i m psi2
    psi2' = -i U psi2 + i m psi1

with psi_k'' = (+-i U' - U^2 + m^2) psi_k.  The sign is + for component 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import UnsupportedForm, WrongCoupling
from .exactnum import I, GaussianRational, Surd, as_gaussian, square_of, surd
from .forms import PolyExp, SolutionForm, as_poly_exp
from .poly import Polynomial

Param = GaussianRational | Surd


class Coupling(enum.Enum):
    SCALAR = "scalar"
    VECTOR = "vector"


GAMMA_MATRICES = {
    Coupling.SCALAR: {"alpha": "[[0, i], [-i, 0]]", "beta": "[[0, 1], [1, 0]]"},
    Coupling.VECTOR: {"alpha": "[[1, 0], [0, -1]]", "beta": "[[0, 1], [1, 0]]"},
}


def _param(v) -> Param:
    return v if isinstance(v, Surd) else as_gaussian(v)


def is_zero(p: Param) -> bool:
    return not p


@dataclass(frozen=True)
class DiracProblem:
    """Potential V, mass m, energy E, coupling and spinor component.

    ``m`` or ``E`` may be a :class:`Surd` when only its square is rational
    (e.g. E^2 = 2 for the oscillator).  The parameter entering U linearly
    (m for scalar, E for vector coupling) must be exact.
    """

    V: Polynomial
    m: Param = GaussianRational(0)
    E: Param = GaussianRational(0)
    coupling: Coupling = Coupling.SCALAR
    component: int = 1

    def __post_init__(self):
        object.__setattr__(self, "V", Polynomial(self.V))
        object.__setattr__(self, "m", _param(self.m))
        object.__setattr__(self, "E", _param(self.E))
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        if self.component not in (1, 2):
            raise ValueError("component must be 1 or 2")
        linear = self.m if self.coupling is Coupling.SCALAR else self.E
        if isinstance(linear, Surd):
            name = "mass" if self.coupling is Coupling.SCALAR else "energy"
            raise ValueError(f"{self.coupling.value} coupling needs an exact {name} in Q(i)")

    @property
    def n(self) -> int:
        """Degree of the potential, 0 for constant or zero V."""
        return self.V.degree or 0

    @property
    def U(self) -> Polynomial:
        if self.coupling is Coupling.SCALAR:
            return self.V + self.m
        return self.V + self.E

    @property
    def coupling_constant(self) -> Param:
        """The constant linking the two components: E (scalar) or m (vector)."""
        return self.E if self.coupling is Coupling.SCALAR else self.m

    @property
    def degenerate(self) -> bool:
        return is_zero(self.coupling_constant)

    def with_component(self, component: int) -> "DiracProblem":
        return DiracProblem(self.V, self.m, self.E, self.coupling, component)


@dataclass(frozen=True)
class Provenance:
    coupling: Coupling
    component: int
    derivative_sign: int
    alpha: str
    beta: str


@dataclass(frozen=True)
class ReducedODE:
    """f'' = r f together with the U it came from."""

    r: Polynomial
    U: Polynomial
    provenance: Provenance


def reduce(problem: DiracProblem) -> ReducedODE:
    U = problem.U
    sign = 1 if problem.component == 1 else -1
    if problem.coupling is Coupling.SCALAR:
        r = U.derivative().scale(sign) + U * U - square_of(problem.E)
    else:
        r = U.derivative().scale(sign * I) - U * U + square_of(problem.m)
    gam = GAMMA_MATRICES[problem.coupling]
    return ReducedODE(r, U, Provenance(problem.coupling, problem.component, sign, gam["alpha"], gam["beta"]))


def _times_i(p: Param) -> Param:
    if isinstance(p, Surd):
        # sign of the root is a convention; only p^2 enters the reduction
        return surd(-p.square)
    return I * p


def _times_minus_i(p: Param) -> Param:
    if isinstance(p, Surd):
        return surd(-p.square)
    return -I * p


def scalar_to_vector_map(problem: DiracProblem) -> DiracProblem:
    """Substitute V -> -iV, E -> -im, m -> iE into a vector problem.

    The reduction of the result equals the reduction of ``problem``.
    """
    if problem.coupling is not Coupling.SCALAR:
        raise WrongCoupling("scalar_to_vector_map needs a scalar problem")
    return DiracProblem(problem.V.scale(-I), _times_i(problem.E), _times_minus_i(problem.m),
                        Coupling.VECTOR, problem.component)


def vector_to_scalar_map(problem: DiracProblem) -> DiracProblem:
    """Scalar problem whose substitution image is ``problem``.

    Inverts :func:`scalar_to_vector_map`: (V, m, E) -> (iV, iE, -im), so
    reduce(result) == reduce(problem) exactly.
    """
    if problem.coupling is not Coupling.VECTOR:
        raise WrongCoupling("vector_to_scalar_map needs a vector problem")
    return DiracProblem(problem.V.scale(I), _times_i(problem.E), _times_minus_i(problem.m),
                        Coupling.SCALAR, problem.component)


def complete_spinor(problem: DiracProblem, psi: SolutionForm) -> PolyExp:
    """Partner component of ``psi`` (which solves the reduced equation of
    ``problem.component``), from the first-order system.

    When the coupling constant vanishes the system decouples and the partner
    is exp(-integral U) (scalar) or exp(-i integral U) (vector) for component 1,
    and the reciprocal forms for component 2.
    """
    pe = as_poly_exp(psi)
    if pe is None or pe.over is not None:
        raise UnsupportedForm(f"cannot complete a spinor from {type(psi).__name__}")
    U = problem.U
    scalar = problem.coupling is Coupling.SCALAR
    first = problem.component == 1
    one = Polynomial.constant(1)
    if problem.degenerate:
        omega = U if scalar else U.scale(I)
        return PolyExp(one, -omega if first else omega)
    P, w = pe.P, pe.omega
    dP = P.derivative()
    if scalar:
        chi = (U - w) * P - dP if first else (U + w) * P + dP
    else:
        chi = (U + w.scale(I)) * P + dP.scale(I) if first else (U - w.scale(I)) * P - dP.scale(I)
    kappa = problem.coupling_constant
    if isinstance(kappa, Surd):
        return PolyExp(chi, w, over=kappa)
    return PolyExp(chi / kappa, w)
