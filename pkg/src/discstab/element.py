"""Rational elements of the real disc algebra.

A `DiscElement` is a reduced quotient num/den of exact rational polynomials
whose denominator is certified zero-free on the closed unit disc.  The
canonical form makes equality structural: num and den share no factor, carry
coprime integer coefficients jointly, and den(0) > 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .cert import NotUnit, UnitCertificate, certify_unit_poly, poly_boundary_range
from .config import DEFAULT_BOUNDARY_GRID, EVAL_DEN_FLOOR
from .errors import EvalNearPole, NonUnitDenominator
from .poly import ONE as P_ONE
from .poly import RealPoly, format_poly, poly_gcd


class DiscElement:
    """Immutable reduced rational function with a certified unit denominator."""

    __slots__ = ("num", "den", "den_cert")

    def __init__(self, num: RealPoly, den: RealPoly, den_cert: UnitCertificate):
        self.num = num
        self.den = den
        self.den_cert = den_cert

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "DiscElement":
        other = as_element(other)
        return element(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "DiscElement":
        return DiscElement(-self.num, self.den, self.den_cert)

    def __sub__(self, other) -> "DiscElement":
        return self + (-as_element(other))

    def __rsub__(self, other) -> "DiscElement":
        return as_element(other) + (-self)

    def __mul__(self, other) -> "DiscElement":
        other = as_element(other)
        return element(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "DiscElement":
        """Reciprocal; requires the numerator to be a certified unit too."""
        return element(self.den, self.num)

    def __truediv__(self, other) -> "DiscElement":
        return self * as_element(other).inverse()

    def __rtruediv__(self, other) -> "DiscElement":
        return as_element(other) * self.inverse()

    def __pow__(self, n: int) -> "DiscElement":
        if not isinstance(n, int):
            raise TypeError("powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        return element(self.num**n, self.den**n)

    # -- evaluation -------------------------------------------------------------

    def __call__(self, z):
        """Evaluate at a point; exact at rationals, floating otherwise."""
        if isinstance(z, (int, Fraction)):
            dv = self.den.at(z)
            if dv == 0:
                raise EvalNearPole("exact denominator zero")
            return self.num.at(z) / dv
        dv = self.den(z)
        if abs(dv) < EVAL_DEN_FLOOR:
            raise EvalNearPole(f"denominator magnitude {abs(dv):.3e} below the floor")
        w = self.num(z) / dv
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise EvalNearPole("evaluation overflowed")
        return w

    # -- housekeeping --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (DiscElement, RealPoly, int, Fraction)):
            other = as_element(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"<DiscElement {format_element(self)}>"

    def __str__(self):
        return format_element(self)


def element(num, den=1) -> DiscElement:
    """Build the canonical DiscElement num/den, certifying the denominator.

    Raises NonUnitDenominator if den has a zero on the closed disc (or cannot
    be certified), ZeroDivisionError if den is the zero polynomial.
    """
    num = _to_poly(num)
    den = _to_poly(den)
    if den.is_zero:
        raise ZeroDivisionError("denominator is the zero polynomial")
    if num.is_zero:
        return DiscElement(RealPoly(), P_ONE, _TRIVIAL_CERT)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    num, den = _joint_integer_normal_form(num, den)
    if den.at(0) == 0:
        raise NonUnitDenominator("denominator vanishes at the origin")
    if den.at(0) < 0:
        num, den = -num, -den
    verdict = certify_unit_poly(den)
    if isinstance(verdict, NotUnit):
        raise NonUnitDenominator(f"denominator is not a unit: {verdict.reason}")
    return DiscElement(num, den, verdict)


def _to_poly(value) -> RealPoly:
    if isinstance(value, RealPoly):
        return value
    if isinstance(value, (list, tuple)):
        return RealPoly(value)
    return RealPoly([value])


def as_element(value) -> DiscElement:
    if isinstance(value, DiscElement):
        return value
    if isinstance(value, (RealPoly, int, Fraction)):
        return element(value if isinstance(value, RealPoly) else RealPoly([value]))
    raise TypeError(f"cannot convert {type(value).__name__} to a disc element")


def _joint_integer_normal_form(num: RealPoly, den: RealPoly) -> tuple[RealPoly, RealPoly]:
    """Scale num and den jointly to coprime integer coefficients."""
    den_lcm = 1
    for c in (*num.coeffs, *den.coeffs):
        den_lcm = lcm(den_lcm, c.denominator)
    n_ints = [int(c * den_lcm) for c in num.coeffs]
    d_ints = [int(c * den_lcm) for c in den.coeffs]
    g = 0
    for v in (*n_ints, *d_ints):
        g = gcd(g, abs(v))
    return RealPoly(Fraction(v, g) for v in n_ints), RealPoly(Fraction(v, g) for v in d_ints)


_TRIVIAL_CERT = certify_unit_poly(P_ONE)

ZERO = element(0)
ONE = element(1)
VAR_Z = element(RealPoly([0, 1]))


def format_element(a: DiscElement) -> str:
    """Canonical text form 'p(z) / (q(z))'; round-trips through the parser."""
    if a.den == P_ONE:
        return format_poly(a.num)
    num_s = format_poly(a.num)
    if _needs_parens(a.num):
        num_s = f"({num_s})"
    den_s = format_poly(a.den)
    if _needs_parens(a.den):
        den_s = f"({den_s})"
    return f"{num_s} / {den_s}"


def _needs_parens(p: RealPoly) -> bool:
    return sum(1 for c in p.coeffs if c != 0) > 1


# -- certified sup norm ---------------------------------------------------------------


def sup_norm_boundary(a: DiscElement, grid: int = DEFAULT_BOUNDARY_GRID) -> tuple[float, float]:
    """Certified interval [lo, hi] around the sup norm over the closed disc.

    lo is the sampled boundary maximum, hi adds Lipschitz slack from a
    derivative bound; by the maximum principle the sup over the disc lies in
    the interval.  Some shapes evaluate exactly (slack 0): see
    sup_norm_exact.
    """
    if a.is_zero:
        return 0.0, 0.0
    exact = sup_norm_exact(a)
    if exact is not None:
        v = float(exact)
        return v, v
    theta = 2.0 * np.pi * np.arange(grid) / grid
    zs = np.exp(1j * theta)
    nv = _np_eval(a.num, zs)
    dv = _np_eval(a.den, zs)
    vals = np.abs(nv) / np.abs(dv)
    lo = float(vals.max())
    slack = boundary_derivative_bound(a) * (math.pi / grid) + 1e-12 * (1.0 + lo)
    return lo, lo + slack


def sup_norm_exact(a: DiscElement) -> Fraction | None:
    """Exact sup norm for single-signed numerators over constant denominators.

    |p(z)| <= sum |c_k| with equality at z = 1 when all coefficients share a
    sign; division by a constant keeps that exact.  Returns None otherwise.
    """
    if a.is_zero:
        return Fraction(0)
    if a.den.degree != 0:
        return None
    signs = {c > 0 for c in a.num.coeffs if c != 0}
    if len(signs) > 1:
        return None
    return abs(a.num.at(1)) / abs(a.den.coeff(0))


def sup_norm_upper(a: DiscElement, grid: int = DEFAULT_BOUNDARY_GRID) -> Fraction:
    """Exact-rational certified upper bound for the sup norm."""
    exact = sup_norm_exact(a)
    if exact is not None:
        return exact
    return Fraction(sup_norm_boundary(a, grid)[1])


def boundary_derivative_bound(a: DiscElement) -> float:
    """Certified bound on |a'| over the closed disc."""
    qmin = a.den_cert.boundary_min_modulus_lower
    if not math.isfinite(qmin):
        qmin = abs(float(a.den.coeff(0)))
    return (
        float(a.num.derivative_l1()) * float(a.den.l1())
        + float(a.num.l1()) * float(a.den.derivative_l1())
    ) / (qmin * qmin)


def _np_eval(p: RealPoly, zs: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(zs)
    for c in reversed(p.coeffs_float()):
        acc = acc * zs + c
    return acc
