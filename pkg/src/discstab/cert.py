"""Certified invertibility checks on the closed unit disc.

A rational element is a unit exactly when its numerator has no zero on the
closed disc.  Two independent methods decide this:

* RootLocation — all numerator roots (from the simultaneous iteration) have
  modulus bounded away from 1;
* ArgumentPrinciple — the boundary image winds zero times around the origin
  while the boundary modulus is certified positive by a grid bound with
  Lipschitz slack.

`is_unit` only answers when both methods agree.  Zeros exactly on the circle
are detected by exact rational arithmetic (gcd with the reciprocal polynomial
followed by a Chebyshev-style change of variable and a Sturm count), so
elements like (1+z)^2/4 or 1+z^2 are classified NotUnit, never guessed.
Roots within NEAR_CIRCLE_TOL of the circle that are not exactly on it make
the verdict Indeterminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .config import (
    DEFAULT_BOUNDARY_GRID,
    DELTA_GRID_ANGLES,
    DELTA_GRID_RADII,
    NEAR_CIRCLE_TOL,
)
from .errors import BoundaryZero, IndeterminateError
from .poly import RealPoly, count_real_roots, poly_gcd
from .roots import roots

if TYPE_CHECKING:  # pragma: no cover
    from .element import DiscElement


# residual tolerance for root finding inside certification: forward residuals
# of high-degree, large-coefficient numerators cannot beat the float noise
# floor that the public roots() default assumes for desk-scale inputs
_CERT_ROOT_TOL = 1e-7


class CertMethod(Enum):
    ROOT_LOCATION = "root-location"
    ARGUMENT_PRINCIPLE = "argument-principle"


class WitnessKind(Enum):
    NO_COMMON_ROOTS = "no-common-roots"
    GRID_LOWER_BOUND = "grid-lower-bound"


@dataclass(frozen=True)
class UnitCertificate:
    """Evidence of invertibility; both methods are recorded.

    margin is the distance of the nearest numerator root to the closed disc
    (infinite when there are no roots at all).
    """

    method: CertMethod
    min_root_modulus: float
    interior_zero_count: int
    boundary_min_modulus_lower: float
    margin: float


@dataclass(frozen=True)
class NotUnit:
    """Negative verdict with its witness."""

    reason: str
    witness_root: complex | None = None
    interior_zero_count: int | None = None


@dataclass(frozen=True)
class CoronaCertificate:
    delta_lower: float
    witness_kind: WitnessKind


@dataclass(frozen=True)
class NotInvertible:
    reason: str
    common_root: complex | None = None


# -- numpy helpers ---------------------------------------------------------------


def _np_horner(coeffs: Sequence[float], z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc


def _circle_points(n: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n) / n
    return np.exp(1j * theta)


def _boundary_derivative_upper(p: RealPoly, grid: int) -> float:
    """Certified upper bound for max |p'| on the circle (one level of slack)."""
    dp = p.derivative()
    if dp.degree <= 0:
        return abs(float(dp.coeff(0)))
    vals = np.abs(_np_horner(dp.coeffs_float(), _circle_points(grid)))
    slack = float(dp.derivative_l1()) * (math.pi / grid)
    return float(vals.max()) + slack + 1e-12 * (1.0 + float(vals.max()))


def poly_boundary_range(p: RealPoly, grid: int = DEFAULT_BOUNDARY_GRID) -> tuple[float, float]:
    """Certified (lower bound of min, upper bound of max) of |p| on |z| = 1.

    The upper end uses a grid maximum plus derivative slack.  The lower end
    subdivides arcs adaptively: an arc is certified once the midpoint value
    beats the derivative bound times the arc half-length, so dips refine
    locally instead of dragging a global Lipschitz term through the minimum.
    """
    if p.is_zero:
        return 0.0, 0.0
    if p.degree == 0:
        v = abs(float(p.coeffs[0]))
        return v, v
    deriv_upper = _boundary_derivative_upper(p, max(grid, 1024))
    upper = _boundary_max_upper(p, grid, deriv_upper)
    noise = 1e-15 * (1.0 + float(p.l1()))
    lower = _adaptive_circle_lower(p.coeffs_float(), deriv_upper, noise, grid)
    return lower, upper


def _boundary_max_upper(p: RealPoly, grid: int, deriv_upper: float | None = None) -> float:
    """Certified upper bound for max |p| on the circle."""
    if p.is_zero:
        return 0.0
    if p.degree == 0:
        return abs(float(p.coeff(0)))
    if deriv_upper is None:
        deriv_upper = _boundary_derivative_upper(p, max(grid, 1024))
    vals = np.abs(_np_horner(p.coeffs_float(), _circle_points(grid)))
    vmax = float(vals.max())
    return vmax + deriv_upper * (math.pi / grid) + 1e-12 * (1.0 + vmax)


def _adaptive_circle_lower(cs, deriv_upper: float, noise: float, grid: int) -> float:
    """Adaptive-arc lower bound for min |p| on the circle (can be <= 0)."""
    two_pi = 2.0 * math.pi
    n0 = max(64, min(grid, 4096))
    theta = two_pi * np.arange(n0) / n0
    arcs = [(float(t), two_pi / n0) for t in theta]  # (start, width)
    lower = math.inf
    budget = 1 << 18
    while arcs and budget > 0:
        batch = arcs
        arcs = []
        starts = np.array([a for a, _ in batch])
        widths = np.array([w for _, w in batch])
        mids = starts + widths / 2.0
        vals = np.abs(_np_horner(cs, np.exp(1j * mids))) - noise
        slacks = deriv_upper * (widths / 2.0)
        budget -= len(batch)
        done = vals - slacks
        for i in range(len(batch)):
            if done[i] > 0.0 or widths[i] < 1e-14:
                lower = min(lower, float(done[i]))
            else:
                half = widths[i] / 2.0
                arcs.append((float(starts[i]), half))
                arcs.append((float(starts[i] + half), half))
        if budget <= 0 and arcs:
            return 0.0  # refinement exhausted: no positive certificate
    return lower if math.isfinite(lower) else 0.0


# -- exact circle-root detection --------------------------------------------------


def has_circle_root(p: RealPoly) -> bool:
    """Exact test: does p vanish anywhere on |z| = 1?

    Circle roots of a real polynomial divide gcd(p, reciprocal(p)), which is
    palindromic; the substitution w = z + 1/z turns its circle roots into real
    roots of a half-degree polynomial in (-2, 2), counted by Sturm sequences.
    """
    cs = list(p.coeffs)
    i = 0
    while i < len(cs) and cs[i] == 0:
        i += 1
    q = RealPoly(cs[i:])
    if q.degree < 1:
        return False
    if q.at(1) == 0 or q.at(-1) == 0:
        return True
    d = poly_gcd(q, q.reciprocal())
    if d.degree < 1:
        return False
    if d.degree % 2 or any(d.coeff(j) != d.coeff(d.degree - j) for j in range(d.degree + 1)):
        raise AssertionError("gcd with reciprocal polynomial must be palindromic")
    m = d.degree // 2
    # z^k + z^-k satisfies P_{k+1} = w*P_k - P_{k-1} with P_0 = 2, P_1 = w
    p_prev = RealPoly([2])
    p_cur = RealPoly([0, 1])
    transformed = RealPoly([d.coeff(m)])
    for k in range(1, m + 1):
        transformed = transformed + d.coeff(m + k) * p_cur
        p_prev, p_cur = p_cur, RealPoly([0, 1]) * p_cur - p_prev
    return count_real_roots(transformed, Fraction(-2), Fraction(2)) > 0


# -- winding numbers ---------------------------------------------------------------


def _winding_number(coeffs: list[float], start_grid: int) -> int:
    """Winding of p restricted to |z|=1, refined until arg steps stay below pi/2."""
    thetas = 2.0 * np.pi * np.arange(max(start_grid, 16)) / max(start_grid, 16)
    for _ in range(24):
        vals = _np_horner(coeffs, np.exp(1j * thetas))
        if np.any(vals == 0):
            raise BoundaryZero("boundary sample hit an exact zero")
        args = np.angle(vals)
        steps = np.diff(args, append=args[0])
        steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
        bad = np.abs(steps) >= (np.pi / 2)
        if not bad.any():
            return int(np.rint(steps.sum() / (2.0 * np.pi)))
        gaps = np.diff(thetas, append=thetas[0] + 2.0 * np.pi)
        mids = thetas[bad] + gaps[bad] / 2.0
        thetas = np.sort(np.concatenate([thetas, mids]))
        if len(thetas) > 1 << 20:
            break
    raise IndeterminateError("winding refinement did not settle; zero too close to the circle")


def count_zeros_disc(a, grid: int = DEFAULT_BOUNDARY_GRID) -> int:
    """Zeros (with multiplicity) of the numerator inside the open unit disc.

    Raises BoundaryZero if a root sits within NEAR_CIRCLE_TOL of |z| = 1.
    """
    p = a.num if hasattr(a, "num") else a
    if p.is_zero:
        raise ValueError("zero element has no zero count")
    if p.degree == 0:
        return 0
    for r, _ in roots(p, _CERT_ROOT_TOL):
        if abs(abs(r) - 1.0) < NEAR_CIRCLE_TOL:
            raise BoundaryZero(f"root {r} lies within {NEAR_CIRCLE_TOL} of the unit circle")
    return _winding_number(p.coeffs_float(), grid)


# -- the two unit-check methods -----------------------------------------------------


def unit_by_root_location(p: RealPoly) -> tuple[bool | None, float]:
    """(verdict, min root modulus); verdict None inside the ambiguity band."""
    rs = roots(p, _CERT_ROOT_TOL)
    if not rs:
        return True, math.inf
    mn = min(abs(r) for r, _ in rs)
    if mn < 1.0 - NEAR_CIRCLE_TOL:
        return False, mn
    if mn > 1.0 + NEAR_CIRCLE_TOL:
        return True, mn
    return None, mn


def unit_by_argument_principle(
    p: RealPoly, grid: int = DEFAULT_BOUNDARY_GRID
) -> tuple[bool | None, int | None, float]:
    """(verdict, interior zero count, certified boundary lower bound).

    verdict None means the boundary bound could not be certified positive, so
    the winding number would be unreliable.
    """
    lower = 0.0
    for g in (grid, grid * 2, grid * 4):
        lower, _ = poly_boundary_range(p, g)
        if lower > 0.0:
            count = _winding_number(p.coeffs_float(), g)
            return count == 0, count, lower
    return None, None, lower


def certify_unit_poly(p: RealPoly, grid: int = DEFAULT_BOUNDARY_GRID) -> UnitCertificate | NotUnit:
    """Cross-checked unit certification for a polynomial numerator.

    Raises IndeterminateError when a root lies within the ambiguity band of
    the circle (but not exactly on it), or if the two methods disagree.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial is not certifiable")
    if p.degree == 0:
        v = abs(float(p.coeffs[0]))
        return UnitCertificate(CertMethod.ROOT_LOCATION, math.inf, 0, v, math.inf)

    if has_circle_root(p):
        witness = _closest_to_circle(p)
        return NotUnit("zero on the unit circle", witness_root=witness)

    verdict_rl, mn = unit_by_root_location(p)
    if verdict_rl is None:
        raise IndeterminateError(
            f"root at modulus {mn!r} is inside the {NEAR_CIRCLE_TOL} ambiguity band",
            witness=mn,
        )
    if verdict_rl:
        verdict_ap, count, lower = unit_by_argument_principle(p, grid)
        if verdict_ap is None:
            raise IndeterminateError("boundary lower bound could not be certified positive")
        if not verdict_ap:
            raise IndeterminateError("root location and argument principle disagree")
        return UnitCertificate(CertMethod.ROOT_LOCATION, mn, count, lower, mn - 1.0)
    # interior root: corroborate with a winding count when the boundary allows
    count = None
    try:
        count = count_zeros_disc(p, grid)
    except (BoundaryZero, IndeterminateError):
        pass
    if count == 0:
        raise IndeterminateError("root location and argument principle disagree")
    witness = min((r for r, _ in roots(p, _CERT_ROOT_TOL)), key=abs)
    return NotUnit("zero inside the open disc", witness_root=witness, interior_zero_count=count)


def is_unit(a: "DiscElement", grid: int = DEFAULT_BOUNDARY_GRID) -> UnitCertificate | NotUnit:
    """Certified unit check for a disc element (its denominator is already a unit)."""
    if a.num.is_zero:
        raise ValueError("is_unit requires a nonzero element")
    verdict = certify_unit_poly(a.num, grid)
    if isinstance(verdict, NotUnit) or (a.den.degree == 0 and a.den.coeff(0) == 1):
        return verdict
    # rescale the boundary bound from the numerator to the element
    _, den_upper = poly_boundary_range(a.den, grid)
    lower = verdict.boundary_min_modulus_lower / den_upper if den_upper > 0 else 0.0
    return UnitCertificate(
        verdict.method,
        verdict.min_root_modulus,
        verdict.interior_zero_count,
        lower,
        verdict.margin,
    )


def _closest_to_circle(p: RealPoly) -> complex | None:
    if p.at(1) == 0:
        return 1 + 0j
    if p.at(-1) == 0:
        return -1 + 0j
    try:
        return min((r for r, _ in roots(p, _CERT_ROOT_TOL)), key=lambda r: abs(abs(r) - 1.0))
    except Exception:
        return None


# -- corona condition ---------------------------------------------------------------


def _element_lipschitz(a) -> float:
    """Certified bound on |a'| over the closed disc.

    The quotient-rule pieces are bounded on the boundary (enough, by the
    maximum principle) with grid maxima plus derivative slack, which is far
    tighter than coefficient-sum bounds for high-degree data.
    """
    qmin = a.den_cert.boundary_min_modulus_lower
    if not math.isfinite(qmin):
        qmin = abs(float(a.den.coeff(0)))
    grid = 1024
    num_d = _boundary_derivative_upper(a.num, grid)
    den_up = _boundary_max_upper(a.den, grid)
    num_up = _boundary_max_upper(a.num, grid)
    den_d = _boundary_derivative_upper(a.den, grid)
    return (num_d * den_up + num_up * den_d) / (qmin * qmin)


def _grid_delta_lower(fs: Sequence, radii: int, angles: int) -> float:
    """Certified lower bound of sum |f_i| over the closed disc via a polar grid."""
    rr = np.linspace(0.0, 1.0, radii)
    zz = np.outer(rr, _circle_points(angles)).ravel()
    total = np.zeros(zz.shape, dtype=float)
    for a in fs:
        nv = _np_horner(a.num.coeffs_float(), zz)
        dv = _np_horner(a.den.coeffs_float(), zz)
        total += np.abs(nv) / np.abs(dv)
    reach = 0.5 / (radii - 1) + math.pi / angles
    slack = sum(_element_lipschitz(a) for a in fs) * reach
    m = float(total.min())
    return m - slack - 1e-12 * (1.0 + m)


def _delta_lower_adaptive(fs: Sequence, radii: int, angles: int) -> float | None:
    for k in range(4):
        d = _grid_delta_lower(fs, radii << k, angles << k)
        if d > 0.0:
            return d
    return None


def _common_factor_verdict(d: RealPoly) -> tuple[bool | None, complex | None]:
    """Classify the root set of the common factor against the closed disc."""
    if d.degree == 0:
        return True, None
    if has_circle_root(d):
        return False, _closest_to_circle(d)
    verdict, mn = unit_by_root_location(d)
    if verdict is None:
        return None, None
    if verdict:
        return True, None
    witness = min((r for r, _ in roots(d, _CERT_ROOT_TOL)), key=abs)
    return False, witness


def is_invertible_pair(
    f: "DiscElement",
    g: "DiscElement",
    radii: int = DELTA_GRID_RADII,
    angles: int = DELTA_GRID_ANGLES,
) -> CoronaCertificate | NotInvertible:
    """Corona check: |f| + |g| bounded away from zero on the closed disc.

    Exact path first: the gcd of the numerators must have all roots outside
    the closed disc.  Near-circle gcd roots fall back to the grid lower bound;
    if that cannot certify positivity either, IndeterminateError is raised.
    """
    return is_invertible_tuple([f, g], radii, angles)


def is_invertible_tuple(
    fs: Sequence["DiscElement"],
    radii: int = DELTA_GRID_RADII,
    angles: int = DELTA_GRID_ANGLES,
) -> CoronaCertificate | NotInvertible:
    """Corona check for an n-tuple via the iterated gcd of the numerators."""
    if not fs:
        raise ValueError("empty tuple")
    nums = [a.num for a in fs]
    if all(p.is_zero for p in nums):
        raise ValueError("all elements are zero")
    d = nums[0]
    for p in nums[1:]:
        d = poly_gcd(d, p)
    verdict, witness = _common_factor_verdict(d)
    if verdict is False:
        return NotInvertible("common zero on the closed disc", common_root=witness)
    if verdict is True:
        delta = _delta_lower_adaptive(fs, radii, angles)
        if delta is None:
            raise IndeterminateError("could not certify a positive corona lower bound")
        return CoronaCertificate(delta, WitnessKind.NO_COMMON_ROOTS)
    # exact path indeterminate: the grid bound can still certify positivity
    delta = _delta_lower_adaptive(fs, radii, angles)
    if delta is not None:
        return CoronaCertificate(delta, WitnessKind.GRID_LOWER_BOUND)
    raise IndeterminateError("common factor has a near-circle root and no grid certificate")


def certified_invertible(fs: Sequence["DiscElement"]) -> bool:
    """Fast root-path-only predicate used as a precondition check.

    Skips the grid delta estimate; raises IndeterminateError on near-circle
    ambiguity like the full check.
    """
    nums = [a.num for a in fs]
    if all(p.is_zero for p in nums):
        return False
    d = nums[0]
    for p in nums[1:]:
        d = poly_gcd(d, p)
    verdict, _ = _common_factor_verdict(d)
    if verdict is None:
        raise IndeterminateError("common factor has a near-circle root")
    return verdict
