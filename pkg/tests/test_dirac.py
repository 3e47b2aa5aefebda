from fractions import Fraction

import pytest

from conftest import random_gaussian, random_polynomial
from dirac_liouville.dirac import (
    Coupling,
    DiracProblem,
    complete_spinor,
    reduce,
    scalar_to_vector_map,
    vector_to_scalar_map,
)
from dirac_liouville.errors import UnsupportedForm, WrongCoupling
from dirac_liouville.exactnum import I, Surd, surd
from dirac_liouville.forms import PolyExp
from dirac_liouville.poly import Polynomial, X
from dirac_liouville.verify import verify_spinor

ONE = Polynomial.constant(1)
SCALAR, VECTOR = Coupling.SCALAR, Coupling.VECTOR


class TestReduce:
    def test_oscillator_by_hand(self):
        # U = x: U' + U^2 - E^2 = 1 + x^2 - 2
        ode = reduce(DiracProblem(X, 0, surd(2)))
        assert ode.r == 1 + X ** 2 - 2
        assert ode.U == X

    def test_constant_potential(self):
        m, E = Fraction(3, 2), 5
        ode = reduce(DiracProblem(Polynomial(), m, E))
        assert ode.r == m * m - E * E

    def test_vector_by_hand(self):
        # U = x^2: iU' - U^2 + m^2 = 2ix - x^4
        ode = reduce(DiracProblem(X ** 2, 0, 0, VECTOR))
        assert ode.r == 2 * I * X - X ** 4

    def test_component_two_flips_derivative(self):
        ode = reduce(DiracProblem(X ** 2, 1, 3, SCALAR, 2))
        U = X ** 2 + 1
        assert ode.r == -U.derivative() + U * U - 9
        assert ode.provenance.derivative_sign == -1
        ode = reduce(DiracProblem(X ** 2, 1, 3, VECTOR, 2))
        U = X ** 2 + 3
        assert ode.r == -I * U.derivative() - U * U + 1

    def test_provenance_records_matrices(self):
        prov = reduce(DiracProblem(X, 0, 0, VECTOR)).provenance
        assert prov.alpha == "[[1, 0], [0, -1]]" and prov.beta == "[[0, 1], [1, 0]]"

    def test_leading_coefficient_is_lambda_squared(self, rng):
        for _ in range(50):
            V = random_polynomial(rng, 8, 1)
            lam = V.leading
            for coupling, sign in ((SCALAR, 1), (VECTOR, -1)):
                for comp in (1, 2):
                    r = reduce(DiracProblem(V, random_gaussian(rng), random_gaussian(rng), coupling, comp)).r
                    assert r.degree == 2 * V.degree
                    assert r.leading == sign * lam * lam

    def test_linear_parameter_must_be_exact(self):
        with pytest.raises(ValueError):
            DiracProblem(X, surd(2), 1)
        with pytest.raises(ValueError):
            DiracProblem(X, 1, surd(2), VECTOR)
        with pytest.raises(ValueError):
            DiracProblem(X, component=3)


class TestCorrespondence:
    def test_substitution_values(self):
        mapped = scalar_to_vector_map(DiracProblem(X, 1, 2))
        assert mapped.V == -I * X
        assert mapped.m == 2 * I
        assert mapped.E == -I
        assert mapped.coupling is VECTOR

    def test_vector_to_scalar_inverts(self):
        vec = DiracProblem(X, 1, 2, VECTOR)
        sc = vector_to_scalar_map(vec)
        assert (sc.V, sc.m, sc.E, sc.coupling) == (I * X, 2 * I, -I, SCALAR)
        assert reduce(sc).r == reduce(vec).r
        assert scalar_to_vector_map(sc) == vec

    def test_zero_fixed_point(self):
        zero = DiracProblem(Polynomial(), 0, 0, VECTOR)
        sc = vector_to_scalar_map(zero)
        assert (sc.V, sc.m, sc.E, sc.coupling) == (Polynomial(), 0, 0, SCALAR)

    def test_wrong_coupling(self):
        with pytest.raises(WrongCoupling):
            vector_to_scalar_map(DiracProblem(X))
        with pytest.raises(WrongCoupling):
            scalar_to_vector_map(DiracProblem(X, coupling=VECTOR))

    def test_identity_on_random_problems(self, rng):
        # reduce_vector(-iV, iE, -im) expanded by hand equals U' + U^2 - E^2
        for _ in range(100):
            V = random_polynomial(rng, 8)
            m, E = random_gaussian(rng), random_gaussian(rng)
            for comp in (1, 2):
                p = DiracProblem(V, m, E, SCALAR, comp)
                q = scalar_to_vector_map(p)
                U = V + m
                sign = 1 if comp == 1 else -1
                expected = sign * U.derivative() + U * U - E * E
                assert reduce(p).r == expected
                assert reduce(q).r == expected

    def test_identity_with_radical_energy(self):
        p = DiracProblem(X ** 3, 1, surd(3))
        assert reduce(scalar_to_vector_map(p)).r == reduce(p).r


class TestCompleteSpinor:
    def test_sol1_partner_is_reciprocal(self, rng):
        for _ in range(20):
            V = random_polynomial(rng, 6)
            m = random_gaussian(rng)
            p = DiracProblem(V, m, 0)
            psi1 = PolyExp(ONE, V + m)
            psi2 = complete_spinor(p, psi1)
            assert psi2 == PolyExp(ONE, -(V + m))

    def test_sol2_partner_is_reciprocal(self):
        p = DiracProblem(X ** 2, 0, 3, VECTOR)
        psi1 = PolyExp(ONE, (X ** 2 + 3).scale(I))
        assert complete_spinor(p, psi1) == PolyExp(ONE, -(X ** 2 + 3).scale(I))

    def test_oscillator_partner_with_radical_energy(self):
        p = DiracProblem(X, 0, surd(2))
        psi1 = PolyExp(ONE, -X)
        psi2 = complete_spinor(p, psi1)
        assert psi2 == PolyExp(2 * X, -X, over=Surd(2))
        assert verify_spinor(p, psi1, psi2).passed

    def test_oscillator_partner_with_exact_energy(self):
        # E^2 = 4: psi1 = x exp(-x^2/2); psi2 = ((U - w)P - P')/E = (2x^2 - 1)/2
        p = DiracProblem(X, 0, 2)
        psi1 = PolyExp(X, -X)
        psi2 = complete_spinor(p, psi1)
        assert psi2 == PolyExp(X ** 2 - Fraction(1, 2), -X)
        assert verify_spinor(p, psi1, psi2).passed

    def test_component_two_completes_to_psi1(self):
        p = DiracProblem(X, 0, 2)
        psi1 = PolyExp(X, -X)
        psi2 = complete_spinor(p, psi1)
        assert complete_spinor(p.with_component(2), psi2) == psi1

    def test_vector_constant_potential_roundtrip(self):
        # U = 5, m = 4: r = -25 + 16 = -9, so exp(3ix) solves component 1
        vec = DiracProblem(Polynomial(), 4, 5, VECTOR)
        psi1 = PolyExp(ONE, Polynomial.constant(3 * I))
        psi2 = complete_spinor(vec, psi1)
        assert psi2 == PolyExp(Polynomial.constant(Fraction(1, 2)), Polynomial.constant(3 * I))
        assert verify_spinor(vec, psi1, psi2).passed
        assert complete_spinor(vec.with_component(2), psi2) == psi1

    def test_rejects_non_polyexp(self):
        from dirac_liouville.forms import AffineBasis
        with pytest.raises(UnsupportedForm):
            complete_spinor(DiracProblem(X), AffineBasis())
