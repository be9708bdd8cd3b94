import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discstab import RealPoly, count_real_roots, gcd_extended, poly_gcd, real_roots_interval
from discstab.poly import ONE, Z, ZERO, format_poly, squarefree_decomposition

small_polys = st.lists(st.integers(-9, 9), min_size=0, max_size=6).map(RealPoly)


def test_canonical_form_strips_trailing_zeros():
    assert RealPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert RealPoly([0, 0]).is_zero
    assert RealPoly().degree == -1
    assert RealPoly([0, 0, 5]).degree == 2


def test_exact_coefficients_stay_fractions():
    p = RealPoly(["1/3", 2, Fraction(5, 7)])
    assert all(isinstance(c, Fraction) for c in p.coeffs)
    assert p.coeff(0) == Fraction(1, 3)


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=80, deadline=None)
@given(small_polys, small_polys)
def test_divmod_reconstructs(a, b):
    if b.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


def test_evaluation_exact_and_float():
    p = RealPoly([1, 0, -1])
    assert p.at(Fraction(1, 2)) == Fraction(3, 4)
    assert p(Fraction(1, 2)) == Fraction(3, 4)
    assert abs(p(0.5 + 0j) - 0.75) < 1e-15
    # conjugate symmetry of real coefficients
    v1 = p(complex(0.3, 0.4))
    v2 = p(complex(0.3, -0.4))
    assert v1 == v2.conjugate()


def test_gcd_extended_examples():
    d, a, b = gcd_extended(Z, RealPoly([1, 0, -1]))
    assert (d, a, b) == (ONE, Z, ONE)
    d, a, b = gcd_extended(RealPoly([-2, 1]), RealPoly([-3, 1]))
    assert d == ONE and a == ONE and b == RealPoly([-1])
    d, a, b = gcd_extended(RealPoly([0, 0, 1]), RealPoly([0, 0, 0, 1]))
    assert d == RealPoly([0, 0, 1]) and a == ONE and b == ZERO


@settings(max_examples=80, deadline=None)
@given(small_polys, small_polys)
def test_gcd_extended_identity_exact(p, q):
    if p.is_zero and q.is_zero:
        return
    d, a, b = gcd_extended(p, q)
    assert a * p + b * q == d
    assert d.is_zero or d.lc == 1
    if not d.is_zero:
        assert (p % d).is_zero and (q % d).is_zero


def test_gcd_of_zero_pair_rejected():
    with pytest.raises(ValueError):
        gcd_extended(ZERO, ZERO)


def test_squarefree_decomposition_multiplicities():
    p = RealPoly([-1, 1]) * RealPoly([-2, 1]) ** 3 * RealPoly([1, 1]) ** 3
    factors = dict((m, f) for f, m in squarefree_decomposition(p))
    assert set(factors) == {1, 3}
    assert factors[1] == RealPoly([-1, 1])
    assert factors[3] == RealPoly([-2, 1]) * RealPoly([1, 1])


def test_real_roots_interval_examples():
    ivs = real_roots_interval(RealPoly([1, 0, -1]), -1, 1)
    assert [iv.mid for iv in ivs] == [-1, 1]
    assert all(iv.is_exact for iv in ivs)

    ivs = real_roots_interval(RealPoly([1, 0, 0, 0, -4]), -1, 1)
    assert len(ivs) == 2
    for iv, expected in zip(ivs, (-0.7071067811865476, 0.7071067811865476)):
        assert abs(iv.float_mid() - expected) < 1e-11
        assert iv.hi - iv.lo <= Fraction(1, 10**12)

    assert real_roots_interval(RealPoly([1, 0, 1]), -1, 1) == []


def test_real_roots_multiplicity_and_interior_rational():
    p = RealPoly([0, 0, 1]) * (RealPoly([Fraction(-1, 3), 1]) ** 2)
    ivs = real_roots_interval(p, -1, 1)
    assert [iv.multiplicity for iv in ivs] == [2, 2]
    assert ivs[0].mid == 0 and ivs[0].is_exact
    assert ivs[1].lo <= Fraction(1, 3) <= ivs[1].hi
    assert ivs[1].hi - ivs[1].lo <= Fraction(1, 10**12)


def test_count_real_roots_half_open():
    p = RealPoly([1, 0, -1])  # roots at 1 and -1
    assert count_real_roots(p, -2, 2) == 2
    assert count_real_roots(p, -1, 1) == 1  # (-1, 1] keeps only +1
    assert count_real_roots(p, 0, Fraction(1, 2)) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_isolation_finds_every_constructed_root(root_list):
    p = ONE
    for r in root_list:
        p = p * RealPoly([-r, 1])
    ivs = real_roots_interval(p, -5, 5)
    got = sorted(float(iv.mid) for iv in ivs for _ in range(iv.multiplicity))
    assert got == pytest.approx(sorted(float(r) for r in root_list), abs=1e-9)


def test_format_poly_round_shapes():
    assert format_poly(RealPoly([1, 0, -1])) == "1 - z^2"
    assert format_poly(RealPoly([7, 10, 5])) == "7 + 10*z + 5*z^2"
    assert format_poly(ZERO) == "0"
    assert format_poly(RealPoly([0, Fraction(-3, 2)])) == "-3/2*z"
