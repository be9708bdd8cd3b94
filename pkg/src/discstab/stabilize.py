"""Joint stabilization of two invertible pairs, and the totally-reducible
construction (both Bezout cofactors invertible).

The two-pair pipeline: solve the first pair exactly, push the solution family
through the second pair, and reduce the resulting (F, G) with the gain
search.  Every identity along the way is exact; only the unit certificates
carry floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bezout import solve_bezout, transform_solution
from .cert import NotUnit, UnitCertificate, certified_invertible, is_unit
from .element import DiscElement, ONE, as_element, element, sup_norm_upper
from .errors import (
    IndeterminateError,
    NoAdmissibleValue,
    NotInvertiblePair,
    NotSignLinked,
)
from .reduce import ReductionWitness, SearchOptions, reduce_pair
from .signs import SignVerdict, constant_sign_on_real_zeros, is_sign_linked, parity_interlacing


@dataclass(frozen=True)
class StabilizationResult:
    """Joint (alpha, beta): exact identity on the first pair, certified unit on the second."""

    alpha: DiscElement
    beta: DiscElement
    unit_certs: tuple[UnitCertificate, ...]
    gain: DiscElement


@dataclass(frozen=True)
class TotalReduceResult:
    """Identity coeff_f * f + coeff_g * g = 1 with both coefficients certified units."""

    coeff_f: DiscElement
    coeff_g: DiscElement
    unit_certs: tuple[UnitCertificate, UnitCertificate]
    norm_bound: Fraction
    avoided_value: Fraction
    ratio: Fraction
    base_coeff_f: DiscElement
    base_coeff_g: DiscElement


def simultaneous_stabilize(pair1, pair2, opts: SearchOptions | None = None) -> StabilizationResult:
    """Find (alpha, beta) with alpha*f1 + beta*g1 = 1 and alpha*f2 + beta*g2 a unit.

    Requires the pairs to be sign-linked (raises NotSignLinked otherwise; by
    the underlying equivalence no solution exists in that case).
    BudgetExhausted propagates from the gain search.
    """
    p1 = tuple(as_element(v) for v in pair1)
    p2 = tuple(as_element(v) for v in pair2)
    opts = opts or SearchOptions()
    for pr in (p1, p2):
        if not certified_invertible(list(pr)):
            raise NotInvertiblePair("both pairs must be certified invertible")
    report = is_sign_linked(p1, p2)
    if report.verdict is SignVerdict.NOT_SIGN_LINKED:
        raise NotSignLinked("the pairs are not sign-linked; no joint stabilizer exists")

    f1, g1 = p1
    f2, g2 = p2
    sol = solve_bezout(f1, g1)
    big_f = sol.alpha * f2 + sol.beta * g2
    big_g = g1 * f2 - f1 * g2
    witness = reduce_pair(big_f, big_g, opts)

    alpha = sol.alpha + witness.gain * g1
    beta = sol.beta - witness.gain * f1
    first = alpha * f1 + beta * g1
    if first != ONE:
        raise AssertionError("transformed solution lost the exact first identity")
    second = alpha * f2 + beta * g2
    if second != big_f + witness.gain * big_g:
        raise AssertionError("second target disagrees with the reduced element")
    cert_first = is_unit(first)
    assert isinstance(cert_first, UnitCertificate)
    return StabilizationResult(alpha, beta, (cert_first, witness.unit_cert), witness.gain)


def stabilize_squares(pair1, pair2, opts: SearchOptions | None = None) -> StabilizationResult:
    """Stabilize the derived pairs (f1^2, g1), (f2^2, g2).

    Squaring the first coordinates makes the multiplier a square at singular
    points where it is defined through them, so the derived pairs are
    sign-linked for generic data and the pipeline applies.  The guarantee has
    one genuine gap: if f1 and f2 share a real zero x in [-1, 1], the
    multiplier there is g2(x)/g1(x), whose sign is unconstrained; such data
    raises NotSignLinked.
    """
    f1, g1 = (as_element(v) for v in pair1)
    f2, g2 = (as_element(v) for v in pair2)
    d1 = (f1 * f1, g1)
    d2 = (f2 * f2, g2)
    for pr in (d1, d2):
        if not certified_invertible(list(pr)):
            raise NotInvertiblePair("a derived squared pair is not invertible")
    report = is_sign_linked(d1, d2)
    if report.verdict is SignVerdict.NOT_SIGN_LINKED:
        raise NotSignLinked(
            "squared pairs are not sign-linked: the first coordinates share a real zero "
            "where the second coordinates have opposite signs"
        )
    return simultaneous_stabilize(d1, d2, opts)


def default_avoided_values(count: int = 10) -> list[Fraction]:
    """The ladder +-1/10, +-1/20, +-1/40, ... used when no candidates are given."""
    out = []
    d = 10
    for _ in range(count):
        out.extend([Fraction(1, d), Fraction(-1, d)])
        d *= 2
    return out


def total_reduce(f, g, x_candidates=None, opts: SearchOptions | None = None) -> TotalReduceResult:
    """Produce units u, v with u*f + v*g = 1.

    Needs g of constant sign on the real zeros of f (ReducibilityViolated
    otherwise) and some real x avoided by f on the closed disc among the
    candidates (NoAdmissibleValue otherwise).  Construction: reduce (g, f) to
    a base identity with a unit g-cofactor, bound the sup norm of f, then
    blend the base identity with f/(f - M) using a ratio small enough to keep
    every factor invertible.
    """
    f, g = as_element(f), as_element(g)
    opts = opts or SearchOptions()
    if not certified_invertible([f, g]):
        raise NotInvertiblePair("total reduction needs a certified invertible pair")
    candidates = [Fraction(x) for x in (x_candidates if x_candidates is not None else default_avoided_values())]

    base = reduce_pair(g, f, opts)  # g + k*f certified unit; raises ReducibilityViolated
    w = g + base.gain * f
    base_v = w.inverse()
    base_h = base.gain * base_v
    if base_h * f + base_v * g != ONE:
        raise AssertionError("base identity is not exact")

    norm_bound = sup_norm_upper(f) + 1
    f_minus = f - norm_bound
    fm_cert = is_unit(f_minus)
    if not isinstance(fm_cert, UnitCertificate):
        raise AssertionError("f - (||f|| + 1) must be a unit")

    ratio_cap = None
    if not base_h.is_zero:
        ratio_cap = 1 / (sup_norm_upper(f_minus) * sup_norm_upper(base_h))

    admissible_seen = False
    for x in candidates:
        if x == 0:
            continue
        shifted = f - x
        if shifted.is_zero:
            continue
        try:
            shifted_cert = is_unit(shifted)
        except IndeterminateError:
            continue
        if isinstance(shifted_cert, NotUnit):
            continue
        admissible_seen = True
        if norm_bound == x:
            continue
        eps = x / (norm_bound - x)
        if eps == -1:
            continue
        if ratio_cap is not None and abs(eps) > ratio_cap:
            continue
        inv_fm = f_minus.inverse()
        scale = element(Fraction(eps + 1))
        r = scale * shifted * inv_fm
        try:
            r_inv = r.inverse()
        except Exception:
            continue
        u = (inv_fm + eps * base_h) * r_inv
        v = eps * base_v * r_inv
        if u * f + v * g != ONE:
            raise AssertionError("blended identity is not exact")
        try:
            u_cert = is_unit(u)
            v_cert = is_unit(v)
        except IndeterminateError:
            continue
        if isinstance(u_cert, NotUnit) or isinstance(v_cert, NotUnit):
            continue
        return TotalReduceResult(
            coeff_f=u,
            coeff_g=v,
            unit_certs=(u_cert, v_cert),
            norm_bound=norm_bound,
            avoided_value=x,
            ratio=eps,
            base_coeff_f=base_h,
            base_coeff_g=base_v,
        )
    if admissible_seen:
        raise NoAdmissibleValue(
            "admissible avoided values existed but none satisfied the ratio and unit constraints"
        )
    raise NoAdmissibleValue("no candidate x makes f - x a unit")


def check_total_reduce_necessary(f, g) -> bool:
    """Necessary condition for total reducibility: even interlacing."""
    return parity_interlacing(f, g)
