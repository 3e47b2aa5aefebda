from fractions import Fraction

import pytest
from hypothesis import given

from conftest import gaussians, nonzero_gaussians
from dirac_liouville.errors import ZeroDivision
from dirac_liouville.exactnum import (
    I,
    GaussianRational,
    Surd,
    as_nonneg_int,
    rational_sqrt,
    square_of,
    surd,
    try_sqrt,
)


def G(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


class TestFieldOps:
    def test_norm_identity(self):
        assert G("1/2", 1) * G("1/2", -1) == G("5/4")

    def test_additive_identity(self):
        a = G("3/7", "-2/5")
        assert a + 0 == a
        assert a + G(0) == a

    def test_self_division(self):
        assert G(1, 1) / G(1, 1) == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivision):
            G(1) / G(0)
        with pytest.raises(ZeroDivisionError):
            G(0).inverse()

    def test_i_squared(self):
        assert I * I == -1
        assert I ** -1 == -I

    def test_mixed_operands(self):
        assert 2 * I + Fraction(1, 2) == G("1/2", 2)
        assert 1 - I == G(1, -1)
        assert 1 / (2 * I) == G(0, "-1/2")

    def test_str_is_grammar_compatible(self):
        assert str(G("3/2")) == "3/2"
        assert str(G(-1, 2)) == "-1+2*i"
        assert str(G(0, -1)) == "-i"
        assert str(G("1/2", "-3/4")) == "1/2-3/4*i"

    def test_immutable(self):
        with pytest.raises(AttributeError):
            G(1).re = 2

    def test_hash_matches_rationals(self):
        assert hash(G(3)) == hash(3) == hash(Fraction(3))
        assert {G(1, 1): "a"}[G(1, 1)] == "a"


class TestTrySqrt:
    def test_minus_one(self):
        assert try_sqrt(-1) == I

    def test_rational_square(self):
        assert try_sqrt(Fraction(9, 4)) == G("3/2")

    def test_two_has_no_root(self):
        assert try_sqrt(2) is None

    def test_gaussian_square(self):
        # (1 + 2i)^2 = -3 + 4i
        assert try_sqrt(G(-3, 4)) == G(1, 2)
        assert try_sqrt(G(-3, -4)) == G(1, -2)

    def test_tiebreak_on_imaginary_axis(self):
        assert try_sqrt(G(-4)) == G(0, 2)

    def test_zero(self):
        assert try_sqrt(0) == 0

    def test_norm_square_but_no_root(self):
        # |3 + 4i| = 5 but (5 + 3)/2 = 4 and (5 - 3)/2 = 1 work; 2i has root 1+i,
        # whereas 3i does not: |3i| = 3, 3/2 is not a square
        assert try_sqrt(G(0, 2)) == G(1, 1)
        assert try_sqrt(G(0, 3)) is None

    def test_rational_sqrt(self):
        assert rational_sqrt(Fraction(49, 16)) == Fraction(7, 4)
        assert rational_sqrt(-1) is None
        assert rational_sqrt(Fraction(1, 2)) is None


class TestAsNonnegInt:
    def test_examples(self):
        assert as_nonneg_int(Fraction(3)) == 3
        assert as_nonneg_int(0) == 0
        assert as_nonneg_int(Fraction(5, 2)) is None

    def test_negative_and_complex(self):
        assert as_nonneg_int(-1) is None
        assert as_nonneg_int(G(2, 1)) is None
        assert as_nonneg_int(G(4)) == 4


class TestSurd:
    def test_exact_when_possible(self):
        assert surd(4) == 2
        assert surd(-1) == I
        assert isinstance(surd(2), Surd)

    def test_square_of(self):
        assert square_of(surd(2)) == 2
        assert square_of(G(1, 1)) == G(0, 2)

    def test_reality(self):
        assert Surd(2).is_real()
        assert not Surd(-2).is_real()


@given(gaussians, nonzero_gaussians)
def test_division_roundtrip(a, b):
    assert (a / b) * b == a


@given(gaussians)
def test_sqrt_of_square(c):
    s = try_sqrt(c * c)
    assert s is not None
    assert s in (c, -c)
    assert s.re > 0 or (s.re == 0 and s.im >= 0)


@given(gaussians)
def test_sqrt_is_exact_when_found(c):
    s = try_sqrt(c)
    if s is not None:
        assert s * s == c


@given(gaussians, gaussians)
def test_canonical_form_after_ops(a, b):
    for v in (a + b, a - b, a * b):
        for part in (v.re, v.im):
            assert isinstance(part, Fraction)
            assert part.denominator > 0
            from math import gcd
            assert gcd(abs(part.numerator), part.denominator) == 1
