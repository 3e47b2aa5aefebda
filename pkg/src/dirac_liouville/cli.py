"""Command-line front end.

Commands: solve, classify, sweep, hermite, verify, eval.  Every command
prints one record (``--format json`` for machine use) and exits with

    0  solvable / pass
    10 not solvable / fail
    2  usage or parse error
    3  internal invariant violation
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .dirac import Coupling, DiracProblem, reduce
from .errors import DiracLiouvilleError, FieldExtensionNeeded, InvariantViolation, ParseError
from .exactnum import surd
from .forms import AffineBasis, ExpSqrtConst, PolyExp, SecondByQuadrature, format_solution
from .kovacic import Solvable, solve, solve_dirac, theorem_prediction
from .parser import format_polynomial, parse_polynomial, parse_scalar, parse_solution
from .poly import Polynomial, X
from .verify import certify, eval_solution, verify_spinor

SCHEMA = "dirac-liouville/1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_FAIL = 10


class UsageError(DiracLiouvilleError):
    pass


# -- serialization -----------------------------------------------------------

def solution_record(sol, component=None) -> dict:
    rec = {"form": _form_name(sol), "text": format_solution(sol)}
    if isinstance(sol, PolyExp):
        rec["P"] = format_polynomial(sol.P)
        rec["W"] = format_polynomial(sol.W)
        if sol.over is not None:
            rec["divisor"] = str(sol.over)
    elif isinstance(sol, ExpSqrtConst):
        rec["P"] = "1"
        rec["W"] = f"{'' if sol.sign > 0 else '-'}sqrt({sol.c})*x"
    if component is not None:
        rec["component"] = component
    return rec


def _form_name(sol) -> str:
    return {PolyExp: "poly_exp", ExpSqrtConst: "exp_sqrt_const",
            AffineBasis: "affine_basis", SecondByQuadrature: "quadrature"}[type(sol)]


def _exclusion_record(ex):
    if ex is None:
        return None
    return {"degree": ex.degree, "order_at_infinity": ex.order_at_infinity,
            "case1_possible": ex.case1_possible, "case2_possible": ex.case2_possible,
            "case3_possible": ex.case3_possible, "reasons": list(ex.reasons)}


def _failure_record(f):
    return {"sign": f.sign, "d": None if f.d is None else str(f.d), "reason": f.reason,
            "residual": None if f.residual is None else format_polynomial(f.residual)}


def _verdict_certificates(verdict) -> dict:
    cert = {"case_exclusion": _exclusion_record(verdict.exclusion),
            "candidate_failures": [_failure_record(f) for f in verdict.failures]}
    if isinstance(verdict, Solvable):
        cert["residuals"] = [format_polynomial(c.residual) for c in verdict.certificates]
    return cert


def _problem_record(p: DiracProblem) -> dict:
    return {"coupling": p.coupling.value, "potential": format_polynomial(p.V),
            "mass": str(p.m), "energy": str(p.E), "component": p.component}


def dumps(record: dict) -> str:
    """Canonical JSON: sorted keys, exact values as strings."""
    return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=True)


def _base(command, args, **payload) -> dict:
    rec = {"schema": SCHEMA, "command": {"name": command, "args": args},
           "verdict": None, "solutions": [], "certificates": {}}
    rec.update(payload)
    return rec


# -- argument helpers ----------------------------------------------------------

def _scalar(text, what):
    try:
        return parse_scalar(text)
    except ParseError as exc:
        raise UsageError(f"--{what} {text!r}: {exc}") from exc


def _problem_from(args) -> DiracProblem:
    try:
        V = parse_polynomial(args.potential)
    except ParseError as exc:
        raise UsageError(f"--potential {args.potential!r}: {exc}") from exc
    m = surd(_scalar(args.mass_sq, "mass-sq")) if args.mass_sq is not None else _scalar(args.mass, "mass")
    E = surd(_scalar(args.energy_sq, "energy-sq")) if args.energy_sq is not None else _scalar(args.energy, "energy")
    try:
        return DiracProblem(V, m, E, Coupling(args.coupling), args.component)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _problem_args(args) -> dict:
    return {k: getattr(args, k) for k in ("coupling", "potential", "mass", "energy", "mass_sq", "energy_sq", "component")}


def _add_problem_flags(p):
    p.add_argument("--coupling", choices=[c.value for c in Coupling], default="scalar")
    p.add_argument("--potential", required=True, help="polynomial V(x), e.g. 'x^2 - 1/2*x'")
    mass = p.add_mutually_exclusive_group()
    mass.add_argument("--mass", default="0")
    mass.add_argument("--mass-sq", dest="mass_sq", help="give m through m^2 (m may be irrational)")
    energy = p.add_mutually_exclusive_group()
    energy.add_argument("--energy", default="0")
    energy.add_argument("--energy-sq", dest="energy_sq", help="give E through E^2 (E may be irrational)")
    p.add_argument("--component", type=int, choices=(1, 2), default=1)


def _add_format(p):
    p.add_argument("--format", choices=("text", "json"), default="text")


# -- commands --------------------------------------------------------------------

def cmd_solve(args):
    problem = _problem_from(args)
    try:
        result = solve_dirac(problem)
    except FieldExtensionNeeded as exc:
        raise InvariantViolation(f"Dirac-derived r needs a field extension: {exc}") from exc
    verdict = result.verdict
    pred = theorem_prediction(problem)
    rec = _base("solve", _problem_args(args),
                problem=_problem_record(problem),
                ode={"r": format_polynomial(result.ode.r), "U": format_polynomial(result.ode.U),
                     "provenance": {"coupling": result.ode.provenance.coupling.value,
                                    "component": result.ode.provenance.component,
                                    "derivative_sign": result.ode.provenance.derivative_sign,
                                    "alpha": result.ode.provenance.alpha,
                                    "beta": result.ode.provenance.beta}},
                theorem={"prediction": pred.solvable, "reason": pred.reason,
                         "agrees": None if pred.solvable is None else pred.solvable == verdict.solvable})
    rec["verdict"] = "solvable" if verdict.solvable else "not_solvable"
    rec["certificates"] = _verdict_certificates(verdict)
    if isinstance(verdict, Solvable):
        rec["solutions"] = [solution_record(s, problem.component) for s in verdict.solutions]
        rec["spinors"] = [{"psi1": solution_record(sp.psi1, 1), "psi2": solution_record(sp.psi2, 2),
                           "passed": sp.check.passed, "decoupled": sp.check.decoupled,
                           "residuals": [format_polynomial(r) for r in sp.check.residuals]}
                          for sp in result.spinors]
    return rec, EXIT_OK if verdict.solvable else EXIT_FAIL


def cmd_classify(args):
    problem = _problem_from(args)
    pred = theorem_prediction(problem)
    solvable, source, reason = pred.solvable, "theorem", pred.reason
    if solvable is None:
        verdict = solve(reduce(problem).r)
        solvable, source = verdict.solvable, "kovacic"
        reason = f"{pred.reason}; Kovacic engine: {'solvable' if solvable else 'not solvable'}"
    rec = _base("classify", _problem_args(args), problem=_problem_record(problem),
                source=source, reason=reason)
    rec["verdict"] = "solvable" if solvable else "not_solvable"
    return rec, EXIT_OK if solvable else EXIT_FAIL


def _parse_list(text, what):
    items = [t.strip() for t in text.split(",") if t.strip()]
    return [_scalar(t, what) for t in items]


def _parse_range(text):
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad degree range {text!r}") from exc


def _random_lower(seed, degree, leading):
    rng = random.Random(f"{seed}:{degree}:{leading}")
    power = rng.randrange(degree)
    value = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
    return Polynomial.monomial(power, value)


def sweep_cells(degrees, coeffs, masses, energies, couplings, components, lower_seed=None):
    """Grid cells in canonical order as picklable tuples of strings."""
    cells = []
    grid = itertools.product(degrees, coeffs, masses, energies, couplings, components)
    for n, c, m, E, coupling, component in grid:
        V = Polynomial.monomial(n, c)
        if lower_seed is not None and n > 0:
            V = V + _random_lower(lower_seed, n, c)
        cells.append((format_polynomial(V), str(m), str(E), coupling, component))
    return cells


def run_cell(cell) -> dict:
    V, m, E, coupling, component = cell
    problem = DiracProblem(parse_polynomial(V), parse_scalar(m), parse_scalar(E), Coupling(coupling), component)
    verdict = solve(reduce(problem).r)
    pred = theorem_prediction(problem)
    return {"potential": V, "mass": m, "energy": E, "coupling": coupling, "component": component,
            "solvable": verdict.solvable, "theorem": pred.solvable,
            "agrees": None if pred.solvable is None else pred.solvable == verdict.solvable}


def run_sweep(cells, jobs=1) -> list[dict]:
    if jobs <= 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_cell, cells, chunksize=max(1, len(cells) // (4 * jobs))))


def summarize_sweep(rows) -> dict:
    disagreements = [r for r in rows if r["agrees"] is False]
    by_problem = {}
    for r in rows:
        key = (r["potential"], r["mass"], r["energy"], r["coupling"])
        by_problem.setdefault(key, set()).add(r["solvable"])
    component_mismatch = [list(k) for k, v in by_problem.items() if len(v) > 1]
    return {"cells": len(rows), "solvable": sum(r["solvable"] for r in rows),
            "not_solvable": sum(not r["solvable"] for r in rows),
            "undecided_by_theorem": sum(r["theorem"] is None for r in rows),
            "disagreements": len(disagreements), "component_mismatches": len(component_mismatch),
            "disagreeing_cells": disagreements, "mismatched_problems": component_mismatch}


def cmd_sweep(args):
    degrees = _parse_range(args.degrees)
    coeffs = _parse_list(args.coeff_set, "coeff-set")
    if any(not c for c in coeffs):
        raise UsageError("leading coefficients must be nonzero")
    masses = _parse_list(args.masses, "masses")
    energies = _parse_list(args.energies, "energies")
    couplings = [c.strip() for c in args.couplings.split(",") if c.strip()]
    for c in couplings:
        if c not in ("scalar", "vector"):
            raise UsageError(f"unknown coupling {c!r}")
    components = [int(c) for c in args.components.split(",") if c.strip()]
    if any(c not in (1, 2) for c in components):
        raise UsageError("components must be 1 or 2")
    if any(d < 0 for d in degrees):
        raise UsageError("degrees must be nonnegative")
    cells = sweep_cells(degrees, coeffs, masses, energies, couplings, components, args.lower_seed)
    if not cells:
        raise UsageError("empty grid")
    rows = run_sweep(cells, args.jobs)
    summary = summarize_sweep(rows)
    args_echo = {k: getattr(args, k) for k in ("degrees", "coeff_set", "masses", "energies",
                                                "couplings", "components", "lower_seed")}
    rec = _base("sweep", args_echo, cells=rows, summary=summary)
    ok = summary["disagreements"] == 0 and summary["component_mismatches"] == 0
    rec["verdict"] = "pass" if ok else "fail"
    return rec, EXIT_OK if ok else EXIT_FAIL


def hermite_table(lam, mass, kmax) -> list[dict]:
    rows = []
    for k in range(1, kmax + 1):
        E2 = 2 * k * lam
        problem = DiracProblem(X.scale(lam), mass, surd(E2))
        result = solve_dirac(problem)
        sols = [s for s in result.verdict.solutions if isinstance(s, PolyExp)] if result.verdict.solvable else []
        match = [s for s in sols if s.P.degree == k - 1]
        if match:
            sol = match[0]
            ok = certify(result.ode, sol).passed
            rows.append({"k": k, "E2": str(E2), "degree": sol.P.degree, "P": format_polynomial(sol.P),
                         "solution": format_solution(sol), "verified": ok})
        else:
            rows.append({"k": k, "E2": str(E2), "degree": None, "P": None, "solution": None, "verified": False})
    return rows


def cmd_hermite(args):
    lam = _scalar(args.lam, "lambda")
    if not lam:
        raise UsageError("--lambda must be nonzero")
    mass = _scalar(args.mass, "mass")
    if args.kmax < 0:
        raise UsageError("--kmax must be nonnegative")
    rows = hermite_table(lam, mass, args.kmax)
    ok = all(r["verified"] for r in rows)
    rec = _base("hermite", {"lambda": args.lam, "mass": args.mass, "kmax": args.kmax}, table=rows)
    rec["verdict"] = "pass" if ok else "fail"
    return rec, EXIT_OK if ok else EXIT_FAIL


def _solution_from(text, flag):
    try:
        P, W = parse_solution(text)
    except ParseError as exc:
        raise UsageError(f"--{flag} {text!r}: {exc}") from exc
    if not P:
        raise UsageError(f"--{flag}: the polynomial factor is zero")
    return PolyExp(P, W.derivative())


def cmd_verify(args):
    problem = _problem_from(args)
    sol = _solution_from(args.solution, "solution")
    ode = reduce(problem)
    cert = certify(ode, sol)
    rec = _base("verify", dict(_problem_args(args), solution=args.solution, partner=args.partner),
                problem=_problem_record(problem))
    rec["solutions"] = [solution_record(sol, problem.component)]
    certs = {"residual": format_polynomial(cert.residual), "second_order_passed": cert.passed}
    passed = cert.passed
    if args.partner is not None:
        partner = _solution_from(args.partner, "partner")
        pair = (sol, partner) if problem.component == 1 else (partner, sol)
        check = verify_spinor(problem, *pair)
        certs["spinor"] = {"passed": check.passed, "decoupled": check.decoupled,
                           "residuals": [format_polynomial(r) for r in check.residuals]}
        rec["solutions"].append(solution_record(partner, 3 - problem.component))
        passed = passed and check.passed
    rec["certificates"] = certs
    rec["verdict"] = "pass" if passed else "fail"
    return rec, EXIT_OK if passed else EXIT_FAIL


def cmd_eval(args):
    sol = _solution_from(args.solution, "solution")
    at = _scalar(args.at, "at")
    if not at.is_real():
        raise UsageError("--at must be a real rational")
    if args.digits < 0 or args.digits > args.digits_cap:
        raise UsageError(f"--digits must lie in [0, {args.digits_cap}]")
    value = eval_solution(sol, at, args.digits, args.digits_cap)
    rec = _base("eval", {"solution": args.solution, "at": args.at, "digits": args.digits},
                value={"re": f"{value.re:f}", "im": f"{value.im:f}", "text": str(value), "exact": value.exact})
    rec["solutions"] = [solution_record(sol)]
    rec["verdict"] = "value"
    return rec, EXIT_OK


# -- text rendering -------------------------------------------------------------------

def render_text(rec: dict) -> str:
    name = rec["command"]["name"]
    lines = []
    if "problem" in rec:
        p = rec["problem"]
        lines.append(f"problem: {p['coupling']} coupling, V = {p['potential']}, m = {p['mass']}, "
                     f"E = {p['energy']}, component {p['component']}")
    if "ode" in rec:
        lines.append(f"reduced: f'' = ({rec['ode']['r']}) f   with U = {rec['ode']['U']}")
    if name in ("solve", "classify", "verify", "sweep", "hermite"):
        lines.append(f"verdict: {rec['verdict']}")
    if name == "solve":
        lines.append(f"theorem: {rec['theorem']['reason']}")
        for s in rec["solutions"]:
            lines.append(f"  psi{s['component']} = {s['text']}")
        for sp in rec.get("spinors", []):
            tag = "pass" if sp["passed"] else ("decoupled, not a first-order solution" if sp["decoupled"] else "FAIL")
            lines.append(f"  spinor: psi1 = {sp['psi1']['text']};  psi2 = {sp['psi2']['text']}  [{tag}]")
        cert = rec["certificates"]
        if cert.get("residuals"):
            lines.append(f"  residuals: {', '.join(cert['residuals'])}")
        if cert.get("case_exclusion"):
            for reason in cert["case_exclusion"]["reasons"]:
                lines.append(f"  - {reason}")
        for f in cert.get("candidate_failures", []):
            extra = f", residual {f['residual']}" if f["residual"] is not None else ""
            lines.append(f"  candidate sign {f['sign']:+d}: d = {f['d']}: {f['reason']}{extra}")
    elif name == "classify":
        lines.append(f"reason: {rec['reason']}")
    elif name == "sweep":
        s = rec["summary"]
        lines.append(f"cells: {s['cells']}  solvable: {s['solvable']}  not solvable: {s['not_solvable']}  "
                     f"theorem undecided: {s['undecided_by_theorem']}")
        lines.append(f"disagreements: {s['disagreements']}  component mismatches: {s['component_mismatches']}")
        for r in s["disagreeing_cells"]:
            lines.append(f"  DISAGREE: {r}")
    elif name == "hermite":
        lines.append(f"{'k':>4}  {'E^2':>8}  {'deg P':>5}  P")
        for r in rec["table"]:
            lines.append(f"{r['k']:>4}  {r['E2']:>8}  {str(r['degree']):>5}  {r['P']}"
                         f"{'' if r['verified'] else '  [FAIL]'}")
    elif name == "verify":
        cert = rec["certificates"]
        lines.append(f"second-order residual: {cert['residual']}")
        if "spinor" in cert:
            lines.append(f"first-order residuals: {', '.join(cert['spinor']['residuals'])}")
    elif name == "eval":
        lines.append(rec["value"]["text"])
    lines.append(f"({rec['ms']} ms)")
    return "\n".join(lines)


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirac-liouville",
                                     description="Liouvillian solutions of the 1D Dirac equation with polynomial potential")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="reduce, solve and verify one problem")
    _add_problem_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="classification theorem verdict for one problem")
    _add_problem_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="compare solver and theorem over a parameter grid")
    p.add_argument("--degrees", default="2..4")
    p.add_argument("--coeff-set", dest="coeff_set", default="-1,1", help="leading coefficients of V")
    p.add_argument("--masses", default="0,1")
    p.add_argument("--energies", default="0,1")
    p.add_argument("--couplings", default="scalar")
    p.add_argument("--components", default="1")
    p.add_argument("--lower-seed", dest="lower_seed", type=int, default=None,
                   help="add one seeded random lower-order term to each potential")
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hermite", help="tabulate the Dirac oscillator family E^2 = 2 k lambda")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mass", default="0")
    p.add_argument("--kmax", type=int, default=5)
    _add_format(p)
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("verify", help="check a candidate 'P * exp(W)' against a problem")
    _add_problem_flags(p)
    p.add_argument("--solution", required=True)
    p.add_argument("--partner", default=None, help="other spinor component, checked against the first-order system")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate 'P * exp(W)' at a rational point")
    p.add_argument("--solution", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--digits-cap", dest="digits_cap", type=int, default=1000)
    _add_format(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        rec, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DiracLiouvilleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rec["ms"] = int((time.perf_counter() - start) * 1000)
    print(dumps(rec) if args.format == "json" else render_text(rec))
    return code


if __name__ == "__main__":
    sys.exit(main())
