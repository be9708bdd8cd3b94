"""Shared generators for randomized tests (all deterministic via explicit seeds)."""

import random
from fractions import Fraction

import pytest

from discstab import RealPoly, element
from discstab.cert import certified_invertible
from discstab.errors import IndeterminateError


def random_poly(rng: random.Random, max_degree: int, coeff_bound: int = 10) -> RealPoly:
    deg = rng.randint(0, max_degree)
    coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(deg + 1)]
    return RealPoly(coeffs)


def random_nonzero_poly(rng, max_degree, coeff_bound=10) -> RealPoly:
    while True:
        p = random_poly(rng, max_degree, coeff_bound)
        if not p.is_zero:
            return p


def random_invertible_pair(rng, max_degree, coeff_bound=10):
    """Certified invertible pair of polynomial elements (rejection sampled)."""
    while True:
        f = element(random_nonzero_poly(rng, max_degree, coeff_bound))
        g = element(random_poly(rng, max_degree, coeff_bound))
        try:
            if certified_invertible([f, g]):
                return f, g
        except IndeterminateError:
            continue


def random_unit_poly(rng, max_pairs=2, max_reals=2) -> RealPoly:
    """Polynomial with all roots certified outside the closed disc."""
    p = RealPoly([rng.choice([1, 2, 3, -1, -2])])
    for _ in range(rng.randint(0, max_reals)):
        r = Fraction(rng.randint(11, 40), 10) * rng.choice([1, -1])
        p = p * RealPoly([-r, 1])
    for _ in range(rng.randint(0, max_pairs)):
        re = Fraction(rng.randint(-20, 20), 10)
        m2 = re * re + Fraction(rng.randint(5, 30), 10)
        if m2 <= Fraction(121, 100):
            m2 = m2 + Fraction(13, 10)
        p = p * RealPoly([m2, -2 * re, 1])
    return p


@pytest.fixture
def rng():
    return random.Random(20240817)
