import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from dirac_liouville.exactnum import GaussianRational
from dirac_liouville.poly import Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(bool)


def polynomials(max_degree=8, coeffs=gaussians):
    return st.lists(coeffs, max_size=max_degree + 1).map(Polynomial)


def random_fraction(rng, span=7, den=5):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_gaussian(rng):
    return GaussianRational(random_fraction(rng), random_fraction(rng))


def random_polynomial(rng, max_degree=8, min_degree=0):
    """Random polynomial over Q(i) with exact degree in [min_degree, max_degree]."""
    deg = rng.randint(min_degree, max_degree)
    coeffs = [random_gaussian(rng) for _ in range(deg)]
    lead = random_gaussian(rng)
    while not lead:
        lead = random_gaussian(rng)
    return Polynomial(coeffs + [lead])


@pytest.fixture
def rng():
    return random.Random(20261016)
