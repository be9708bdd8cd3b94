"""Sign analysis on the real segment [-1, 1].

Where the 2x2 data matrix of two pairs turns singular on the segment, its
rows are proportional and the proportionality multiplier picks up a strict
sign; the pairs are sign-linked when that sign never changes.  Singular
points are isolated exactly (Sturm), and every sign decision is made in exact
rational arithmetic by shrinking the isolating interval until the relevant
polynomials cannot change sign inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cert import certified_invertible
from .config import BISECTION_CAP
from .element import DiscElement, as_element, element
from .errors import DegeneratePivot, IndeterminateError, NotInvertiblePair
from .poly import RealPoly, RootInterval, count_real_roots, poly_gcd, real_roots_interval


class SignVerdict(Enum):
    SIGN_LINKED = "sign-linked"
    NOT_SIGN_LINKED = "not-sign-linked"
    NO_SINGULAR_POINTS = "no-singular-points"


class PivotSource(Enum):
    """Which quotient defined the multiplier at a singular point."""

    FIRST = "f2/f1"
    SECOND = "g2/g1"


@dataclass(frozen=True)
class SingularPoint:
    """A real zero of the pair determinant with its certified multiplier sign."""

    lo: Fraction
    hi: Fraction
    x: float
    multiplier: float
    multiplier_error: float
    sign: int
    source: PivotSource
    multiplicity: int


@dataclass(frozen=True)
class SignReport:
    determinant: DiscElement
    points: tuple[SingularPoint, ...]
    verdict: SignVerdict
    proportional_multiplier: DiscElement | None = None


@dataclass(frozen=True)
class SignWitness:
    """Value and certified sign of one element at one isolated real zero."""

    lo: Fraction
    hi: Fraction
    x: float
    value: float
    sign: int


@dataclass(frozen=True)
class ConstantSignReport:
    holds: bool
    witnesses: tuple[SignWitness, ...]
    vacuous: bool = False


# -- exact signs at isolated algebraic points -----------------------------------------


def _vanishes_at_root(p: RealPoly, iv: RootInterval) -> bool:
    """Does p vanish exactly at the algebraic root isolated by iv?"""
    if p.is_zero:
        return True
    if iv.is_exact:
        return p.at(iv.lo) == 0
    g = poly_gcd(iv.factor, p)
    if g.degree < 1:
        return False
    return g.at(iv.hi) == 0 or count_real_roots(g, iv.lo, iv.hi) > 0


def _poly_sign_at_root(p: RealPoly, iv: RootInterval) -> int:
    """Certified sign of p at the root isolated by iv; 0 when p vanishes there.

    Shrinks the interval (exactly, via the isolating factor) until p cannot
    change sign inside it, then evaluates at a rational endpoint.
    """
    if _vanishes_at_root(p, iv):
        return 0
    if iv.is_exact:
        v = p.at(iv.lo)
        return 1 if v > 0 else -1
    lo, hi = iv.lo, iv.hi
    w = iv.factor
    wlo = w.at(lo)
    for _ in range(BISECTION_CAP):
        vlo = p.at(lo)
        if vlo != 0 and count_real_roots(p, lo, hi) == 0:
            return 1 if vlo > 0 else -1
        mid = (lo + hi) / 2
        wm = w.at(mid)
        if wm == 0:
            v = p.at(mid)
            return 1 if v > 0 else -1
        if (wm > 0) == (wlo > 0):
            lo, wlo = mid, wm
        else:
            hi = mid
    raise IndeterminateError("sign refinement exceeded the bisection cap")


def _element_sign_at_root(a: DiscElement, iv: RootInterval) -> int:
    sn = _poly_sign_at_root(a.num, iv)
    if sn == 0:
        return 0
    sd = _poly_sign_at_root(a.den, iv)
    return sn * sd


# -- determinant and multipliers --------------------------------------------------------


def determinant(pair1, pair2) -> DiscElement:
    """Exact determinant f1*g2 - f2*g1 of the stacked pair matrix."""
    f1, g1 = (as_element(v) for v in pair1)
    f2, g2 = (as_element(v) for v in pair2)
    return f1 * g2 - f2 * g1


def _quotient_value(num_el: DiscElement, den_el: DiscElement, lo: Fraction, hi: Fraction):
    """(float value at midpoint, spread-based error bound) of num_el/den_el."""
    vals = []
    for t in (lo, (lo + hi) / 2, hi):
        dv = den_el(t)
        if dv == 0:
            continue
        vals.append(float(num_el(t) / dv))
    if not vals:
        return float("nan"), float("inf")
    mid = vals[len(vals) // 2]
    err = max(abs(v - mid) for v in vals) * 2.0 + 1e-14 * (1.0 + abs(mid))
    return mid, err


def multiplier_at(pair1, pair2, iv: RootInterval) -> SingularPoint:
    """The row multiplier at one singular point, with a certified strict sign.

    The pivot follows the larger first-pair coordinate at the interval
    midpoint; a pivot that vanishes exactly at the point hands over to the
    other coordinate.  DegeneratePivot means both first-pair coordinates
    vanish, which certified invertible data cannot produce.
    """
    f1, g1 = (as_element(v) for v in pair1)
    f2, g2 = (as_element(v) for v in pair2)
    f1_dead = _vanishes_at_root(f1.num, iv) or f1.is_zero
    g1_dead = _vanishes_at_root(g1.num, iv) or g1.is_zero
    if f1_dead and g1_dead:
        raise DegeneratePivot("both first-pair coordinates vanish at a singular point")
    mid = iv.float_mid()
    t = Fraction(mid).limit_denominator(1 << 40)
    prefer_first = abs(f1(t)) >= abs(g1(t))
    use_first = (prefer_first and not f1_dead) or g1_dead
    if use_first:
        num_el, den_el, source = f2, f1, PivotSource.FIRST
    else:
        num_el, den_el, source = g2, g1, PivotSource.SECOND
    sn = _element_sign_at_root(num_el, iv) if not num_el.is_zero else 0
    if sn == 0:
        raise DegeneratePivot(
            "multiplier vanishes at a singular point; the second pair cannot be invertible"
        )
    sd = _element_sign_at_root(den_el, iv)
    value, err = _quotient_value(num_el, den_el, iv.lo, iv.hi)
    return SingularPoint(
        lo=iv.lo,
        hi=iv.hi,
        x=mid,
        multiplier=value,
        multiplier_error=err,
        sign=sn * sd,
        source=source,
        multiplicity=iv.multiplicity,
    )


def is_sign_linked(pair1, pair2) -> SignReport:
    """Decide whether two certified invertible pairs are sign-linked.

    An identically-zero determinant means the pairs are proportional; the
    verdict then follows the global multiplier, which must keep one strict
    sign on [-1, 1] (no zeros or poles there).
    """
    p1 = tuple(as_element(v) for v in pair1)
    p2 = tuple(as_element(v) for v in pair2)
    for pr in (p1, p2):
        if not certified_invertible(list(pr)):
            raise NotInvertiblePair("sign analysis needs certified invertible pairs")
    det = p1[0] * p2[1] - p2[0] * p1[1]
    if det.is_zero:
        mult = _proportional_multiplier(p1, p2)
        linked = (
            not _has_real_root_in_segment(mult.num)
            and not _has_real_root_in_segment(mult.den)
        )
        verdict = SignVerdict.SIGN_LINKED if linked else SignVerdict.NOT_SIGN_LINKED
        return SignReport(det, (), verdict, proportional_multiplier=mult)
    ivs = real_roots_interval(det.num, Fraction(-1), Fraction(1))
    points = tuple(multiplier_at(p1, p2, iv) for iv in ivs)
    if not points:
        return SignReport(det, (), SignVerdict.NO_SINGULAR_POINTS)
    signs = {pt.sign for pt in points}
    verdict = SignVerdict.SIGN_LINKED if len(signs) == 1 else SignVerdict.NOT_SIGN_LINKED
    return SignReport(det, points, verdict)


def _proportional_multiplier(p1, p2) -> DiscElement:
    f1, g1 = p1
    f2, g2 = p2
    if not f1.is_zero and not f2.is_zero:
        return element(f2.num * f1.den, f2.den * f1.num)
    return element(g2.num * g1.den, g2.den * g1.num)


def _has_real_root_in_segment(p: RealPoly) -> bool:
    if p.degree < 1:
        return False
    return bool(real_roots_interval(p, Fraction(-1), Fraction(1)))


# -- reductions of the sign-linked notion -------------------------------------------------


def constant_sign_on_real_zeros(f, g) -> ConstantSignReport:
    """Does f keep one strict sign at every real zero of g in [-1, 1]?

    Vacuously true when g has no real zeros there.  For g identically zero
    every point of the segment counts, so f itself must be zero-free on it.
    """
    f, g = as_element(f), as_element(g)
    if not certified_invertible([f, g]):
        raise NotInvertiblePair("constant-sign analysis needs a certified invertible pair")
    if g.is_zero:
        holds = not _has_real_root_in_segment(f.num)
        return ConstantSignReport(holds, (), vacuous=False)
    ivs = real_roots_interval(g.num, Fraction(-1), Fraction(1))
    if not ivs:
        return ConstantSignReport(True, (), vacuous=True)
    witnesses = []
    for iv in ivs:
        s = _element_sign_at_root(f, iv)
        if s == 0:
            raise AssertionError(
                "f vanishes at a real zero of g; the pair cannot be invertible"
            )
        value, _ = _quotient_value(f, as_element(1), iv.lo, iv.hi)
        witnesses.append(SignWitness(iv.lo, iv.hi, iv.float_mid(), value, s))
    holds = len({w.sign for w in witnesses}) == 1
    return ConstantSignReport(holds, tuple(witnesses))


def parity_interlacing(f, g) -> bool:
    """Even interlacing: constant signs in both directions."""
    return constant_sign_on_real_zeros(f, g).holds and constant_sign_on_real_zeros(g, f).holds
