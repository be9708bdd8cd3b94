import random
from fractions import Fraction

import pytest

from discstab import (
    RealPoly,
    SearchOptions,
    Strategy,
    UnitCertificate,
    element,
    is_unit,
    pin_polynomial,
    reduce_pair,
)
from discstab.element import ONE, VAR_Z, ZERO
from discstab.errors import BudgetExhausted, NotInvertiblePair, ReducibilityViolated
from discstab.poly import ONE as P_ONE

from conftest import random_invertible_pair

z = VAR_Z
z2 = element(RealPoly([0, 0, 1]))
p = element(RealPoly([1, 0, -1]))


def test_pin_examples():
    assert pin_polynomial(p) == RealPoly([-1, 0, 1])
    assert pin_polynomial(element(RealPoly([-2, 1]))) == P_ONE
    assert pin_polynomial(element(RealPoly([1, 0, 0, 0, -4]))) == RealPoly([Fraction(-1, 4), 0, 0, 0, 1])


def test_pin_splits_rational_roots():
    g = element(RealPoly([Fraction(3, 2), Fraction(-7, 2), 1]))  # (z-1/2)(z-3)
    assert pin_polynomial(g) == RealPoly([Fraction(-1, 2), 1])


def test_pin_multiplicities():
    g = element(RealPoly([0, 0, 1]) * RealPoly([-2, 1]))  # z^2 (z-2)
    assert pin_polynomial(g) == RealPoly([0, 0, 1])


def test_pin_divides_numerator():
    g = element(RealPoly([2, 0, -9, 0, 4]))
    pin = pin_polynomial(g)
    assert (g.num % pin).is_zero


def test_stage_zero_when_f_is_unit():
    w = reduce_pair(ONE, p)
    assert w.strategy is Strategy.ZERO and w.gain == ZERO
    assert w.unit_cert.margin == float("inf")


def test_stage_unit_denominator():
    g = element(RealPoly([-3, 1]))
    w = reduce_pair(z2, g)
    assert w.strategy is Strategy.UNIT_DENOMINATOR
    assert z2 + w.gain * g == ONE


def test_pinned_search_inspection_example():
    w = reduce_pair(z2, p, SearchOptions(seed=3))
    assert w.strategy is Strategy.PINNED_SEARCH
    assert w.gain == ONE
    u = z2 + w.gain * p
    assert u == ONE


def test_reducibility_violated_is_the_iff_error():
    with pytest.raises(ReducibilityViolated):
        reduce_pair(z, p)


def test_requires_invertible_pair():
    with pytest.raises(NotInvertiblePair):
        reduce_pair(z, z**3)


def test_witness_soundness_randomized(rng):
    from discstab.signs import constant_sign_on_real_zeros

    opts = SearchOptions(budget=4000, seed=9)
    done = 0
    budget_misses = 0
    while done < 20:
        f, g = random_invertible_pair(rng, 4, coeff_bound=6)
        if not constant_sign_on_real_zeros(f, g).holds:
            continue
        done += 1
        try:
            w = reduce_pair(f, g, opts)
        except BudgetExhausted:
            budget_misses += 1
            continue
        u = f + w.gain * g
        cert = is_unit(u)
        assert isinstance(cert, UnitCertificate)
        assert cert.margin >= opts.margin_target
    assert budget_misses <= 2


def test_determinism():
    f = element(RealPoly([Fraction(1, 4), 0, 1]))  # roots +-i/2: not a unit
    g = p
    opts = SearchOptions(seed=21)
    w1 = reduce_pair(f, g, opts)
    w2 = reduce_pair(f, g, opts)
    assert w1.strategy is Strategy.PINNED_SEARCH
    assert w1.gain == w2.gain
    assert w1.strategy == w2.strategy


def test_pin_correctness_of_returned_gain():
    # (u - f) must be divisible by the pin: u = f + s * pin by construction
    f = element(RealPoly([2, 0, 3]))
    g = element(RealPoly([0, 1]) * RealPoly([-4, 1]))  # z (z - 4)
    w = reduce_pair(f, g, SearchOptions(seed=5))
    u = f + w.gain * g
    pin = pin_polynomial(g)
    diff = u - f
    # diff = s * pin as a rational function: numerator divisible after clearing
    q, r = divmod(diff.num, pin)
    assert r.is_zero
