import math
import random
from fractions import Fraction

import pytest

from discstab import (
    RealPoly,
    SignVerdict,
    constant_sign_on_real_zeros,
    determinant,
    element,
    is_sign_linked,
    parity_interlacing,
)
from discstab.cert import certified_invertible
from discstab.element import ONE, VAR_Z, ZERO
from discstab.errors import IndeterminateError, NotInvertiblePair

from conftest import random_invertible_pair

z = VAR_Z
z2 = element(RealPoly([0, 0, 1]))
p = element(RealPoly([1, 0, -1]))


def test_determinant_examples():
    f, g = random_invertible_pair(random.Random(5), 4)
    assert determinant((ONE, ZERO), (f, g)) == g
    four_z2 = element(RealPoly([0, 0, 4]))
    assert determinant((ONE, z2), (four_z2, ONE)) == element(RealPoly([1, 0, 0, 0, -4]))
    assert determinant((z, p), (z, p)) == ZERO


def test_sign_linked_examples():
    rep = is_sign_linked((ONE, ZERO), (ONE, z2))
    assert rep.verdict is SignVerdict.SIGN_LINKED
    assert len(rep.points) == 1
    pt = rep.points[0]
    assert pt.x == 0 and pt.multiplier == pytest.approx(1.0) and pt.multiplicity == 2

    four_z2 = element(RealPoly([0, 0, 4]))
    rep = is_sign_linked((ONE, z2), (four_z2, ONE))
    assert rep.verdict is SignVerdict.SIGN_LINKED
    assert sorted(pt.x for pt in rep.points) == pytest.approx(
        [-math.sqrt(0.5), math.sqrt(0.5)], abs=1e-10
    )
    for pt in rep.points:
        assert pt.multiplier == pytest.approx(2.0, abs=1e-10)

    rep = is_sign_linked((ONE, ZERO), (z, p))
    assert rep.verdict is SignVerdict.NOT_SIGN_LINKED
    assert sorted(pt.sign for pt in rep.points) == [-1, 1]


def test_sign_linked_requires_invertible():
    with pytest.raises(NotInvertiblePair):
        is_sign_linked((z, z**3), (ONE, ZERO))


def test_no_singular_points_is_vacuous():
    rep = is_sign_linked((ONE, ZERO), (element(RealPoly([2, 1])), ONE))
    assert rep.verdict is SignVerdict.NO_SINGULAR_POINTS


def test_proportional_pairs():
    rep = is_sign_linked((z, p), (z, p))
    assert rep.verdict is SignVerdict.SIGN_LINKED
    assert rep.proportional_multiplier == ONE

    # doubled pair: multiplier 2, still one sign
    rep = is_sign_linked((z, p), (z + z, p + p))
    assert rep.verdict is SignVerdict.SIGN_LINKED
    assert rep.proportional_multiplier == element(2)

    # multiplier with a sign change on the segment: scaled by z - 1/2 outside?
    # use pairs (f, g) and (m*f, m*g) with m = z - 2 (no zeros in [-1,1]) -> linked
    m = element(RealPoly([-2, 1]))
    rep = is_sign_linked((z, p), (m * z, m * p))
    assert rep.verdict is SignVerdict.SIGN_LINKED


def test_symmetry_of_the_notion(rng):
    for _ in range(25):
        p1 = random_invertible_pair(rng, 4)
        p2 = random_invertible_pair(rng, 4)
        try:
            r12 = is_sign_linked(p1, p2)
            r21 = is_sign_linked(p2, p1)
        except (IndeterminateError, NotInvertiblePair):
            continue
        ok12 = r12.verdict in (SignVerdict.SIGN_LINKED, SignVerdict.NO_SINGULAR_POINTS)
        ok21 = r21.verdict in (SignVerdict.SIGN_LINKED, SignVerdict.NO_SINGULAR_POINTS)
        assert ok12 == ok21


def test_squares_property(rng):
    # squared first coordinates force positive multipliers on random data
    done = 0
    while done < 100:
        f1, g1 = random_invertible_pair(rng, 4)
        f2, g2 = random_invertible_pair(rng, 4)
        d1 = (f1 * f1, g1)
        d2 = (f2 * f2, g2)
        try:
            if not (certified_invertible(list(d1)) and certified_invertible(list(d2))):
                continue
            rep = is_sign_linked(d1, d2)
        except (IndeterminateError, NotInvertiblePair):
            continue
        assert rep.verdict in (SignVerdict.SIGN_LINKED, SignVerdict.NO_SINGULAR_POINTS)
        done += 1


def test_constant_sign_examples():
    assert constant_sign_on_real_zeros(z2, p).holds
    assert not constant_sign_on_real_zeros(z, p).holds
    assert constant_sign_on_real_zeros(z2, element(RealPoly([2, 0, 1]))).vacuous


def test_constant_sign_witnesses():
    rep = constant_sign_on_real_zeros(z, p)
    assert sorted(w.sign for w in rep.witnesses) == [-1, 1]
    assert sorted(w.x for w in rep.witnesses) == [-1.0, 1.0]


def test_reduction_consistency(rng):
    # is_sign_linked((1,0), (f,g)) must agree exactly with constant_sign_on_real_zeros
    for _ in range(40):
        f, g = random_invertible_pair(rng, 5)
        try:
            rep = is_sign_linked((ONE, ZERO), (f, g))
            plain = constant_sign_on_real_zeros(f, g)
        except (IndeterminateError, NotInvertiblePair):
            continue
        linked = rep.verdict in (SignVerdict.SIGN_LINKED, SignVerdict.NO_SINGULAR_POINTS)
        assert linked == plain.holds


def test_parity_examples():
    assert parity_interlacing(z2, element(RealPoly([1, 0, 0, 0, -4])))
    assert not parity_interlacing(z, p)
    f, g = random_invertible_pair(random.Random(11), 4)
    assert parity_interlacing(ONE, g) or g.is_zero


def test_swap_system_is_accepted(rng):
    # pairs (f, g) and (g, f) with f - g zero-free on [-1, 1]
    found = 0
    while found < 10:
        f, g = random_invertible_pair(rng, 3)
        from discstab.poly import real_roots_interval

        diff = (f - g).num
        if diff.is_zero or (diff.degree >= 1 and real_roots_interval(diff, -1, 1)):
            continue
        try:
            if not certified_invertible([g, f]):
                continue
            rep = is_sign_linked((f, g), (g, f))
        except (IndeterminateError, NotInvertiblePair):
            continue
        assert rep.verdict in (SignVerdict.SIGN_LINKED, SignVerdict.NO_SINGULAR_POINTS)
        found += 1
