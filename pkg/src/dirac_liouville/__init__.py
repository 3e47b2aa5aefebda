"""Liouvillian solvability of the one-dimensional Dirac equation with a
polynomial potential, decided exactly with Case 1 of Kovacic's algorithm."""

from .dirac import Coupling, DiracProblem, ReducedODE, complete_spinor, reduce, scalar_to_vector_map, vector_to_scalar_map
from .exactnum import GaussianRational, Surd, as_nonneg_int, surd, try_sqrt
from .forms import AffineBasis, ExpSqrtConst, PolyExp, SecondByQuadrature, format_solution
from .kovacic import (
    NotSolvable,
    Solvable,
    case_exclusion,
    classify_by_theorem,
    compute_case1_data,
    degree_candidates,
    find_P,
    solve,
    solve_dirac,
    theorem_prediction,
)
from .parser import format_polynomial, parse_polynomial, parse_scalar, parse_solution
from .poly import Polynomial, X, asymptotic_sqrt
from .verify import eval_solution, residual, verify_spinor

__version__ = "0.1.0"
