import math

import pytest

from discstab import (
    FalsifyVerdict,
    NotUnit,
    RealPoly,
    SearchOptions,
    UnitCertificate,
    element,
    falsify,
    interpolation_constraints,
    make_triple,
    obstruction_map,
    solve_bezout,
    verify_candidate,
)
from discstab.errors import EvalNearPole


def test_make_triple_geometry_n2():
    t = make_triple(2)
    rep = t.sign_reports[2]  # pairs {2,3}
    xs = sorted(pt.x for pt in rep.points)
    assert xs == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)], abs=1e-10)
    for pt in rep.points:
        assert pt.multiplier == pytest.approx(2.0, abs=1e-10)


def test_make_triple_geometry_n1():
    t = make_triple(1)
    rep = t.sign_reports[2]
    assert sorted(pt.x for pt in rep.points) == pytest.approx([-1.0, 1.0], abs=1e-12)
    for pt in rep.points:
        assert pt.multiplier == pytest.approx(1.0, abs=1e-10)


def test_make_triple_first_subpair():
    for n in (1, 3, 7):
        t = make_triple(n)
        rep = t.sign_reports[0]  # pairs {1,2}: determinant z^2, multiplier 1 at 0
        assert len(rep.points) == 1
        assert rep.points[0].x == 0
        assert rep.points[0].multiplier == pytest.approx(1.0)


def test_verify_candidate_examples():
    t = make_triple(3)
    verdicts = verify_candidate(t, element(1), element(0))
    assert isinstance(verdicts[0], UnitCertificate)
    assert isinstance(verdicts[1], UnitCertificate)
    assert isinstance(verdicts[2], NotUnit)

    t1 = make_triple(1)
    verdicts = verify_candidate(t1, element(1), element(1))
    assert isinstance(verdicts[0], UnitCertificate)
    assert isinstance(verdicts[1], NotUnit) and "circle" in verdicts[1].reason
    assert isinstance(verdicts[2], NotUnit) and "circle" in verdicts[2].reason

    t2 = make_triple(2)
    verdicts = verify_candidate(t2, element(1), element(-1))
    assert isinstance(verdicts[2], NotUnit)
    assert verdicts[2].interior_zero_count == 2


def test_falsify_small_budget_no_witness():
    t = make_triple(4)
    rep = falsify(t, SearchOptions(budget=600, seed=7))
    assert rep.verdict is FalsifyVerdict.NO_WITNESS_FOUND
    assert rep.budget_used <= 600
    assert rep.best_margin < 0


def test_falsify_deterministic():
    t = make_triple(2)
    r1 = falsify(t, SearchOptions(budget=500, seed=7))
    r2 = falsify(t, SearchOptions(budget=500, seed=7))
    assert r1.best_margin == r2.best_margin
    assert r1.best_gain == r2.best_gain


def test_interpolation_constraints():
    cons = interpolation_constraints(4)
    expected = {(0.5, 0): 4.0, (-0.5, 0): 4.0, (0, 0.5): -4.0, (0, -0.5): -4.0}
    assert len(cons) == 4
    for node, value in cons:
        assert expected[(round(node.real, 12), round(node.imag, 12))] == value
    cons = interpolation_constraints(1)
    vals = {round(v) for _, v in cons}
    assert vals == {1, -1}


def test_constraints_honored_by_exact_solutions():
    for n in (1, 2, 4):
        f = element(RealPoly([0, 0, 1]))
        g = element(RealPoly([1, 0, 0, 0, -(n * n)]))
        sol = solve_bezout(f, g)
        for node, value in interpolation_constraints(n):
            assert sol.alpha(node) == pytest.approx(value, abs=1e-9)


def test_obstruction_map_values():
    # the map takes the value 1 exactly at +-1/sqrt(n), +-i/sqrt(n)
    h = element(RealPoly([1, 1]))
    for n in (2, 5):
        r = 1 / math.sqrt(n)
        for p in (r, -r, 1j * r, -1j * r):
            assert obstruction_map(n, h, p) == pytest.approx(1.0, abs=1e-12)
    assert obstruction_map(2, element(0), 1.0) == pytest.approx(4.0)
    assert obstruction_map(2, element(0), 0.0) == 0.0


def test_obstruction_map_pole_guard():
    # h = -1: denominator 1 - z^2 vanishes at z = 1
    with pytest.raises(EvalNearPole):
        obstruction_map(2, element(-1), 1.0)
