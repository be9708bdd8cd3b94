"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
Criterion 4 measures the search-miss rate over random squares instances and
asserts the stated 5% bound; see the repository notes if it reports a higher
rate on this population.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from discstab import (
    FalsifyVerdict,
    NotUnit,
    RealPoly,
    SearchOptions,
    SignVerdict,
    UnitCertificate,
    apply_matrix,
    element,
    falsify,
    interpolation_constraints,
    is_invertible_tuple,
    is_sign_linked,
    make_triple,
    parse_element,
    print_element,
    recover_gain,
    reduce_pair,
    solve_bezout,
    stabilize_squares,
    total_reduce,
    transform_solution,
)
from discstab.cert import (
    CoronaCertificate,
    certified_invertible,
    unit_by_argument_principle,
    unit_by_root_location,
)
from discstab.element import ONE, VAR_Z, ZERO
from discstab.errors import BudgetExhausted, IndeterminateError, ReducibilityViolated

from conftest import random_nonzero_poly, random_poly

z = VAR_Z


def report(criterion: int, ok: bool, detail: str):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def _random_invertible_pair(rng, max_degree, bound=10):
    while True:
        f = element(random_nonzero_poly(rng, max_degree, bound))
        g = element(random_poly(rng, max_degree, bound))
        try:
            if certified_invertible([f, g]):
                return f, g
        except IndeterminateError:
            continue


def test_criterion_1_bezout_exactness():
    rng = random.Random(101)
    started = time.perf_counter()
    for _ in range(200):
        f, g = _random_invertible_pair(rng, 8)
        sol = solve_bezout(f, g)
        residual = sol.alpha * f + sol.beta * g - ONE
        assert residual.is_zero and sol.exact
    elapsed = time.perf_counter() - started
    report(1, elapsed <= 10.0, f"200 exact identities in {elapsed:.2f}s (limit 10s)")


def test_criterion_2_triple_geometry():
    worst_x = 0.0
    worst_m = 0.0
    for n in range(1, 11):
        t = make_triple(n)
        rep = t.sign_reports[2]
        expected = 1.0 / math.sqrt(n)
        assert len(rep.points) == 2
        xs = sorted(pt.x for pt in rep.points)
        worst_x = max(worst_x, abs(xs[0] + expected), abs(xs[1] - expected))
        for pt in rep.points:
            worst_m = max(worst_m, abs(pt.multiplier - n))
    ok = worst_x <= 1e-10 and worst_m <= 1e-10
    report(2, ok, f"singular points off by {worst_x:.2e}, multipliers by {worst_m:.2e} (tol 1e-10)")


def test_criterion_3_negative_control():
    p = element(RealPoly([1, 0, -1]))
    rep = is_sign_linked((ONE, ZERO), (z, p))
    not_linked = rep.verdict is SignVerdict.NOT_SIGN_LINKED
    violated = False
    try:
        reduce_pair(z, p)
    except ReducibilityViolated:
        violated = True
    report(3, not_linked and violated, "(1,0) vs (z, 1-z^2) rejected by both paths")


def test_criterion_4_pipeline_soundness():
    rng = random.Random(404)
    done = 0
    exhausted = 0
    while done < 50:
        # base pairs with derived degrees <= 4: squared coordinate from deg <= 2
        f1 = element(random_nonzero_poly(rng, 2))
        g1 = element(random_poly(rng, 4))
        f2 = element(random_nonzero_poly(rng, 2))
        g2 = element(random_poly(rng, 4))
        pair1, pair2 = (f1, g1), (f2, g2)
        d1 = (f1 * f1, g1)
        d2 = (f2 * f2, g2)
        try:
            if not (certified_invertible(list(d1)) and certified_invertible(list(d2))):
                continue
        except IndeterminateError:
            continue
        done += 1
        try:
            r = stabilize_squares(pair1, pair2, SearchOptions(seed=7))
        except BudgetExhausted:
            exhausted += 1
            continue
        assert r.alpha * d1[0] + r.beta * d1[1] == ONE
        assert isinstance(r.unit_certs[1], UnitCertificate)
        assert r.unit_certs[1].margin >= 1e-6
    rate = exhausted / done
    report(
        4,
        rate <= 0.05,
        f"budget-exhausted on {exhausted}/50 squares instances ({rate:.0%}; allowed 5%)",
    )


def test_criterion_5_total_reduce_worked_example():
    f = element(RealPoly([1, 2, 1]), RealPoly([4]))
    g = element(RealPoly([3, 1]))
    r = total_reduce(f, g, [Fraction(-1, 10)])
    expected_u = element(21) / (20 * f + 2)
    expected_v = -(f - 2) / ((20 * f + 2) * g)
    ok = (
        r.coeff_f == expected_u
        and r.coeff_g == expected_v
        and r.coeff_f * f + r.coeff_g * g == ONE
        and r.unit_certs[0].margin >= 0.1
        and r.unit_certs[1].margin >= 0.1
        and r.norm_bound == 2
        and r.ratio == Fraction(-1, 21)
    )
    report(5, ok, "u = 21/(20f+2), v = -(f-2)/((20f+2)(z+3)), margins >= 0.1")


def test_criterion_6_parametrization_round_trip():
    rng = random.Random(606)
    for _ in range(100):
        f, g = _random_invertible_pair(rng, 4)
        sol = solve_bezout(f, g)
        h = element(random_poly(rng, 4, 6))
        y = transform_solution([sol.alpha, sol.beta], [f, g], h)
        assert recover_gain([sol.alpha, sol.beta], y, [f, g]) == h
    for _ in range(100):
        f, g = _random_invertible_pair(rng, 3, bound=6)
        # unit-determinant matrix from elementary operations
        m = [[ONE, element(random_poly(rng, 2, 4))], [ZERO, ONE]]
        if rng.random() < 0.5:
            m = [[ONE, ZERO], [element(random_poly(rng, 2, 4)), ONE]]
        if rng.random() < 0.5:
            c = element(rng.choice([2, 3, -2, Fraction(1, 2)]))
            m = [[m[0][0] * c, m[0][1] * c], [m[1][0], m[1][1]]]
        out, repd = apply_matrix(m, [f, g])
        assert repd.invertible
        assert isinstance(is_invertible_tuple(list(out)), CoronaCertificate)
    report(6, True, "100 recover round trips exact; 100 unit-determinant transforms invertible")


def test_criterion_7_counterexample_evidence():
    started = time.perf_counter()
    margins = {}
    opts = SearchOptions(max_degree=6, budget=20000, seed=7)
    for n in (2, 4, 8, 16):
        rep = falsify(make_triple(n), opts)
        assert rep.verdict is FalsifyVerdict.NO_WITNESS_FOUND
        margins[n] = rep.best_margin
    elapsed = time.perf_counter() - started
    ordered = [margins[n] for n in (2, 4, 8, 16)]
    monotone = all(b <= a + 1e-12 for a, b in zip(ordered, ordered[1:]))
    ok = monotone and elapsed <= 60.0
    report(
        7,
        ok,
        f"no witness at n=2,4,8,16; margins {['%.4f' % m for m in ordered]} "
        f"non-increasing, {elapsed:.1f}s (limit 60s)",
    )


def test_criterion_8_corollary_constraints():
    worst = 0.0
    for n in (1, 2, 4):
        f = element(RealPoly([0, 0, 1]))
        g = element(RealPoly([1, 0, 0, 0, -(n * n)]))
        sol = solve_bezout(f, g)
        for node, value in interpolation_constraints(n):
            worst = max(worst, abs(sol.alpha(node) - value))
    report(8, worst <= 1e-9, f"alpha hits +-n at the four nodes, worst error {worst:.2e}")


def _poly_with_roots_off_annulus(rng):
    """Random polynomial, degree <= 10, every root modulus in [0.1, 0.95] or [1.05, 3]."""
    p = RealPoly([rng.choice([1, 2, -1, -2, 3])])
    degree_left = rng.randint(1, 10)
    has_inside = False
    while degree_left > 0:
        inside = rng.random() < 0.5
        if degree_left >= 2 and rng.random() < 0.5:
            m = Fraction(rng.randint(10, 95) if inside else rng.randint(105, 300), 100)
            re = m * Fraction(rng.randint(-95, 95), 100)
            p = p * RealPoly([m * m, -2 * re, 1])  # conjugate pair of modulus exactly m
            degree_left -= 2
        else:
            r = Fraction(rng.randint(10, 95) if inside else rng.randint(105, 300), 100)
            p = p * RealPoly([-r * rng.choice([1, -1]), 1])
            degree_left -= 1
        has_inside = has_inside or inside
    return p, has_inside


def test_criterion_9_certifier_cross_agreement():
    rng = random.Random(909)
    for _ in range(500):
        p, has_inside = _poly_with_roots_off_annulus(rng)
        rl, _ = unit_by_root_location(p)
        ap, _, _ = unit_by_argument_principle(p)
        assert rl is not None and ap is not None
        assert rl == ap
        assert rl == (not has_inside)
    report(9, True, "root-location and argument-principle verdicts agree on 500 polynomials")


def test_criterion_10_cli_round_trip_and_exit_codes():
    from conftest import random_unit_poly

    rng = random.Random(1010)
    for _ in range(500):
        a = element(random_poly(rng, 5), random_unit_poly(rng))
        assert parse_element(print_element(a)) == a

    script = [sys.executable, "-m", "discstab"]

    def run(*args):
        proc = subprocess.run(script + list(args), capture_output=True, text=True, timeout=600)
        return proc.returncode, json.loads(proc.stdout)

    cases = [
        (["bezout", "--pair1", "z", "1 - z^2"], 0, None),
        (["corona", "--pair1", "z^2", "z^3"], 0, None),  # negative verdict still exits 0
        (["bezout", "--pair1", "z", "z^3"], 2, "NotInvertiblePair"),
        (["stabilize", "--pair1", "1", "0", "--pair2", "z", "1 - z^2"], 2, "NotSignLinked"),
        (
            [
                "stabilize",
                "--pair1", "1", "0",
                "--pair2",
                "(-6 - 10*z - 3*z^2 - 7*z^3)/2",
                "2*(-5 - 5*z - z^2 + z^3 - 5*z^4)^2 - (-6 - 10*z - 3*z^2 - 7*z^3)",
                "--budget", "150", "--max-degree", "1",
            ],
            3,
            "BudgetExhausted",
        ),
        (["bezout", "--pair1", "z^-1", "1"], 4, "ParseError"),
        (["corona", "--pair1", "1/z", "1"], 4, "NonUnitDenominator"),
    ]
    for args, want_code, want_type in cases:
        code, doc = run(*args)
        assert code == want_code, (args, code, doc)
        if want_type:
            assert doc["error"]["type"] == want_type
    report(10, True, "500 print/parse round trips exact; every exit-code class exercised")
