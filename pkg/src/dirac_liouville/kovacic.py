"""Case 1 of Kovacic's algorithm for f'' = r f with polynomial r.

A polynomial r has no finite poles and order -deg(r) at infinity, so
Cases 2 and 3 can never apply and Case 1 needs deg(r) even.  For
deg(r) = 2*nu the only data are s = [sqrt(r)]_inf and the coefficient b of
x^(nu-1) in r - s^2.  Each sign eps gives omega = eps*s and a candidate
degree d = (eps*b/a - nu)/2 for the polynomial factor P, where a is the
leading coefficient of s.  A solution P*exp(integral omega) exists iff P
of degree d solves

    P'' + 2 omega P' + (omega' + omega^2 - r) P = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dirac import Coupling, DiracProblem, ReducedODE, complete_spinor, is_zero, reduce, vector_to_scalar_map
from .errors import FieldExtensionNeeded, InvariantViolation, NotApplicable
from .exactnum import ZERO, GaussianRational, Surd, as_nonneg_int, square_of
from .forms import AffineBasis, ExpSqrtConst, PolyExp, SecondByQuadrature, SolutionForm, as_poly_exp
from .poly import Polynomial, asymptotic_sqrt
from .verify import ResidualCertificate, SpinorCheck, certify, ode_operator, verify_spinor


@dataclass(frozen=True)
class CaseExclusion:
    degree: int
    order_at_infinity: int
    case1_possible: bool
    case2_possible: bool
    case3_possible: bool
    reasons: tuple[str, ...]


def case_exclusion(r: Polynomial) -> CaseExclusion:
    deg = r.degree
    if deg is None or deg < 1:
        raise NotApplicable("case analysis needs a non-constant r")
    order = -deg
    reasons = [
        "r is a polynomial: no finite poles",
        f"order of r at infinity is {order}",
        "case 2 needs a finite pole of order 2 or of odd order > 2: impossible",
        "case 3 needs order at infinity >= 2: impossible",
    ]
    even = deg % 2 == 0
    if even:
        reasons.append("case 1 admissible: order at infinity is even")
    else:
        reasons.append(f"case 1 needs even order at infinity or order > 2; {order} is odd and negative: impossible")
    return CaseExclusion(deg, order, even, False, False, tuple(reasons))


@dataclass(frozen=True)
class Case1Data:
    s: Polynomial
    nu: int
    a: GaussianRational
    b: GaussianRational


def compute_case1_data(r: Polynomial) -> Case1Data:
    s = asymptotic_sqrt(r)
    nu = s.degree
    b = (r - s * s)[nu - 1]
    return Case1Data(s, nu, s.leading, b)


@dataclass(frozen=True)
class OmegaCandidate:
    sign: int
    omega: Polynomial
    d: GaussianRational

    @property
    def degree(self) -> int | None:
        return as_nonneg_int(self.d)


def all_candidates(data: Case1Data) -> list[OmegaCandidate]:
    out = []
    for sign in (1, -1):
        d = (sign * data.b / data.a - data.nu) / 2
        out.append(OmegaCandidate(sign, data.s.scale(sign), d))
    return out


def degree_candidates(data: Case1Data) -> list[OmegaCandidate]:
    """Candidates whose degree is a nonnegative integer."""
    return [c for c in all_candidates(data) if c.degree is not None]


def _solve_linear(rows: list[list[GaussianRational]], rhs: list[GaussianRational]) -> list[GaussianRational] | None:
    """Exact Gauss-Jordan elimination; None if inconsistent.

    Free variables, if any, are set to zero.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [v] for row, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(aug)) if aug[k][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][c]:
                f = aug[k][c]
                aug[k] = [vk - f * vr for vk, vr in zip(aug[k], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    if any(row[-1] for row in aug[r:]):
        return None
    sol = [ZERO] * ncols
    for k, c in enumerate(pivots):
        sol[c] = aug[k][-1]
    return sol


def find_P(omega: Polynomial, d: int, r: Polynomial) -> Polynomial | None:
    """Monic P of degree d with P'' + 2 omega P' + (omega' + omega^2 - r) P = 0."""
    images = [ode_operator(Polynomial.monomial(j), omega, r) for j in range(d + 1)]
    height = max((p.degree for p in images if p), default=-1) + 1
    if height == 0:
        return Polynomial.monomial(d)
    rows = [[images[j][k] for j in range(d)] for k in range(height)]
    rhs = [-images[d][k] for k in range(height)]
    lower = _solve_linear(rows, rhs)
    if lower is None:
        return None
    P = Polynomial(lower + [1])
    if ode_operator(P, omega, r):
        raise InvariantViolation("linear solve returned a non-solution")
    return P


# -- verdicts --------------------------------------------------------------

@dataclass(frozen=True)
class CandidateFailure:
    sign: int | None
    d: GaussianRational | None
    reason: str
    residual: Polynomial | None = None


@dataclass(frozen=True)
class Solvable:
    solutions: tuple[SolutionForm, ...]
    certificates: tuple[ResidualCertificate, ...]
    exclusion: CaseExclusion | None = None
    failures: tuple[CandidateFailure, ...] = ()

    solvable = True


@dataclass(frozen=True)
class NotSolvable:
    exclusion: CaseExclusion
    failures: tuple[CandidateFailure, ...]

    solvable = False


Verdict = Solvable | NotSolvable


def _emit(r, solutions, **extra) -> Solvable:
    certs = tuple(certify(r, s) for s in solutions if not isinstance(s, SecondByQuadrature))
    for cert in certs:
        if not cert.passed:
            raise InvariantViolation(f"emitted solution has nonzero residual {cert.residual}")
    return Solvable(tuple(solutions), certs, **extra)


def solve(r: Polynomial) -> Verdict:
    """Decide Liouvillian solvability of f'' = r f and return solutions."""
    if not r:
        return _emit(r, [AffineBasis()])
    if r.degree == 0:
        return _emit(r, [ExpSqrtConst(r[0], 1), ExpSqrtConst(r[0], -1)])
    exclusion = case_exclusion(r)
    if not exclusion.case1_possible:
        failures = tuple(CandidateFailure(sign, None, "no Case 1 expansion: odd degree") for sign in (1, -1))
        return NotSolvable(exclusion, failures)
    try:
        data = compute_case1_data(r)
    except FieldExtensionNeeded as exc:
        exc.certificate = exclusion
        raise
    found, failures = [], []
    for cand in all_candidates(data):
        d = cand.degree
        if d is None:
            failures.append(CandidateFailure(cand.sign, cand.d, "candidate degree is not a nonnegative integer"))
            continue
        P = find_P(cand.omega, d, r)
        if P is None:
            res = ode_operator(Polynomial.constant(1), cand.omega, r) if d == 0 else None
            failures.append(CandidateFailure(cand.sign, cand.d, f"no monic polynomial of degree {d}", res))
            continue
        found.append(PolyExp(P, cand.omega))
    if not found:
        return NotSolvable(exclusion, tuple(failures))
    return _emit(r, found + [SecondByQuadrature(found[0])], exclusion=exclusion, failures=tuple(failures))


# -- theorem-level classification -------------------------------------------

@dataclass(frozen=True)
class Prediction:
    solvable: bool | None
    reason: str


def _is_real(p) -> bool:
    return p.is_real() if isinstance(p, (GaussianRational, Surd)) else True


def theorem_prediction(problem: DiracProblem) -> Prediction:
    """What the classification theorem says about ``problem``.

    Returns ``solvable=None`` outside its hypotheses (non-real potential or
    parameters), where the Kovacic engine is the only authority.
    """
    if not (problem.V.is_real() and _is_real(problem.m) and _is_real(problem.E)):
        return Prediction(None, "Theorem silent: non-real parameters")
    n = problem.n
    scalar = problem.coupling is Coupling.SCALAR
    if n == 0:
        return Prediction(True, "Theorem: n=0, constant coefficients")
    if n == 1:
        sp = problem if scalar else vector_to_scalar_map(problem)
        q = square_of(sp.E) / (2 * sp.V.leading)
        name = "E^2/(2*lambda)" if scalar else "-m^2/(2*i*lambda)"
        if as_nonneg_int(q - 1) is not None:
            return Prediction(True, f"Theorem: n=1, {name} = {q} is a positive integer (Hermite family)")
        if as_nonneg_int(-q) is not None:
            return Prediction(True, f"Theorem: n=1, {name} = {q}; opposite-sign candidate degree {-q} is a nonnegative integer")
        return Prediction(False, f"Theorem: n=1, {name} = {q} is not an integer")
    if scalar:
        ok = is_zero(problem.E)
        return Prediction(ok, "Theorem: n>1, E=0" if ok else "Theorem: n>1, E≠0")
    ok = is_zero(problem.m)
    return Prediction(ok, "Theorem: n>1, m=0" if ok else "Theorem: n>1, m≠0")


def classify_by_theorem(problem: DiracProblem) -> bool | None:
    return theorem_prediction(problem).solvable


# -- end-to-end pipeline ----------------------------------------------------

@dataclass(frozen=True)
class SpinorSolution:
    psi1: PolyExp
    psi2: PolyExp
    check: SpinorCheck


@dataclass(frozen=True)
class DiracSolution:
    problem: DiracProblem
    ode: ReducedODE
    verdict: Verdict
    spinors: tuple[SpinorSolution, ...] = field(default=())


def solve_dirac(problem: DiracProblem) -> DiracSolution:
    """Reduce, solve, and complete every closed-form solution to a spinor."""
    ode = reduce(problem)
    verdict = solve(ode.r)
    spinors = []
    if verdict.solvable:
        for sol in verdict.solutions:
            own = as_poly_exp(sol)
            if own is None:
                continue
            partner = complete_spinor(problem, own)
            psi1, psi2 = (own, partner) if problem.component == 1 else (partner, own)
            check = verify_spinor(problem, psi1, psi2)
            if not check.passed and not check.decoupled:
                raise InvariantViolation("completed spinor fails the first-order system")
            spinors.append(SpinorSolution(psi1, psi2, check))
    return DiracSolution(problem, ode, verdict, tuple(spinors))
