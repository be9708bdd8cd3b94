"""Bezout identities over the rational disc algebra: solving, symmetrizing,
and moving between solutions.

The solver runs extended Euclid on the numerators; for a certified invertible
pair the resulting gcd has all roots outside the closed disc, so dividing
through by it stays inside the algebra and the identity holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cert import NotUnit, UnitCertificate, certified_invertible, is_unit
from .element import ONE, ZERO, DiscElement, as_element, element
from .errors import (
    DimensionMismatch,
    IdentityViolated,
    InconsistentSolutions,
    NonUnitDenominator,
    NotASolution,
    NotAntisymmetric,
    NotInvertiblePair,
)
from .poly import RealPoly, gcd_extended


@dataclass(frozen=True)
class BezoutSolution:
    """Pair (alpha, beta) with alpha*f + beta*g = 1 holding exactly."""

    alpha: DiscElement
    beta: DiscElement
    exact: bool


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial with complex rational coefficients, split exactly."""

    re: RealPoly
    im: RealPoly


@dataclass(frozen=True)
class ComplexPolyPair:
    """Complex-coefficient candidate solution prior to symmetrization."""

    alpha: ComplexPoly
    beta: ComplexPoly


def solve_bezout(f, g) -> BezoutSolution:
    """Exact solution of alpha*f + beta*g = 1 for a certified invertible pair.

    Raises NotInvertiblePair when the pair has a common zero on the closed
    disc; IndeterminateError propagates if certification cannot decide.
    """
    f, g = as_element(f), as_element(g)
    if f.is_zero and g.is_zero:
        raise NotInvertiblePair("both elements are zero")
    if not certified_invertible([f, g]):
        raise NotInvertiblePair("pair shares a zero on the closed disc")
    d, a, b = gcd_extended(f.num, g.num)
    alpha = element(a * f.den, d)
    beta = element(b * g.den, d)
    residual = alpha * f + beta * g - ONE
    if not residual.is_zero:
        raise AssertionError("euclidean construction failed to produce an exact identity")
    return BezoutSolution(alpha, beta, exact=True)


def symmetrize(pair: ComplexPolyPair, f, g) -> BezoutSolution:
    """Average a complex solution with its reflection to get a real one.

    For coefficients a_k = p_k + i*q_k the reflected average keeps exactly the
    p_k, so the output polynomials carry the real parts; the identity is
    checked exactly before and after.  Raises IdentityViolated if the complex
    input does not solve the equation.
    """
    f, g = as_element(f), as_element(g)
    alpha_re, alpha_im = element(pair.alpha.re), element(pair.alpha.im)
    beta_re, beta_im = element(pair.beta.re), element(pair.beta.im)
    re_part = alpha_re * f + beta_re * g - ONE
    im_part = alpha_im * f + beta_im * g
    if not (re_part.is_zero and im_part.is_zero):
        raise IdentityViolated("complex input does not satisfy alpha*f + beta*g = 1")
    return BezoutSolution(alpha_re, beta_re, exact=True)


# -- the solution family ------------------------------------------------------------


def _inner(x: Sequence[DiscElement], f: Sequence[DiscElement]) -> DiscElement:
    acc = ZERO
    for xi, fi in zip(x, f):
        acc = acc + xi * fi
    return acc


def _as_matrix(h, n: int) -> list[list[DiscElement]]:
    if isinstance(h, (list, tuple)):
        rows = [[as_element(v) for v in row] for row in h]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"matrix must be {n}x{n}")
        return rows
    if n != 2:
        raise DimensionMismatch("a single gain element only encodes the 2x2 case")
    g = as_element(h)
    return [[ZERO, g], [-g, ZERO]]


def transform_solution(x, f, h) -> tuple[DiscElement, ...]:
    """Move to another exact solution: y = x + H f with H antisymmetric.

    `h` is either a full n x n matrix or, for pairs, the single element
    encoding [[0, h], [-h, 0]] so that y = (x1 + h*f2, x2 - h*f1).
    """
    x = [as_element(v) for v in x]
    f = [as_element(v) for v in f]
    if len(x) != len(f) or len(f) < 2:
        raise DimensionMismatch("solution and generator tuples must have equal length >= 2")
    if not (_inner(x, f) - ONE).is_zero:
        raise NotASolution("input tuple does not satisfy <x, f> = 1")
    mat = _as_matrix(h, len(f))
    n = len(f)
    for i in range(n):
        for j in range(i, n):
            if not (mat[i][j] + mat[j][i]).is_zero:
                raise NotAntisymmetric(f"H[{i}][{j}] != -H[{j}][{i}]")
    y = tuple(x[i] + _inner(mat[i], f) for i in range(n))
    if not (_inner(y, f) - ONE).is_zero:
        raise AssertionError("antisymmetric transform must preserve the identity")
    return y


def recover_gain(x, y, f) -> DiscElement:
    """Invert the transform for pairs: the h with y = (x1 + h*g, x2 - h*f).

    Division happens in the exact rational-function field, so cancellations at
    zeros of the generators are exact.  Raises InconsistentSolutions when no
    single h explains both coordinates (e.g. y is not an exact solution).
    """
    x = [as_element(v) for v in x]
    y = [as_element(v) for v in y]
    f = [as_element(v) for v in f]
    if not (len(x) == len(y) == len(f) == 2):
        raise DimensionMismatch("recover_gain works on pairs")
    if not (_inner(x, f) - ONE).is_zero:
        raise NotASolution("x does not satisfy <x, f> = 1")
    d1 = y[0] - x[0]
    d2 = y[1] - x[1]
    if d1.is_zero and d2.is_zero:
        return ZERO
    f0, g0 = f
    candidates = []
    try:
        if not g0.is_zero:
            candidates.append(_field_quotient(d1, g0))
        if not f0.is_zero:
            candidates.append(_field_quotient(-d2, f0))
    except NonUnitDenominator as exc:
        raise InconsistentSolutions(f"quotient leaves the algebra: {exc}") from exc
    if not candidates:
        raise InconsistentSolutions("both generators are zero")
    h = candidates[0]
    if any(c != h for c in candidates[1:]):
        raise InconsistentSolutions("the two recovery quotients disagree")
    if y[0] != x[0] + h * g0 or y[1] != x[1] - h * f0:
        raise InconsistentSolutions("recovered gain does not reproduce y")
    return h


def _field_quotient(a: DiscElement, b: DiscElement) -> DiscElement:
    """a / b computed in the rational-function field, then re-certified."""
    return element(a.num * b.den, a.den * b.num)


# -- matrix action on tuples -----------------------------------------------------------


@dataclass(frozen=True)
class InvertibilityReport:
    """Outcome of pushing invertibility through g = M f.

    invertible is None when the determinant is not a certified unit (the
    lemma then says nothing); witness is a tuple y with <g, y> = 1 when one
    could be constructed.
    """

    invertible: bool | None
    witness: tuple[DiscElement, ...] | None
    det: DiscElement
    det_verdict: UnitCertificate | NotUnit


def apply_matrix(m, f, witness=None) -> tuple[tuple[DiscElement, ...], InvertibilityReport]:
    """Apply a square matrix over the algebra to a tuple and track invertibility.

    When det(M) is a certified unit and f is certified invertible, the output
    tuple is invertible with witness (adj M)^T x / det for any x satisfying
    <f, x> = 1 (computed via the Bezout solver for pairs when not supplied).
    """
    f = [as_element(v) for v in f]
    n = len(f)
    rows = [[as_element(v) for v in row] for row in m]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatch(f"matrix must be {n}x{n} to act on an {n}-tuple")
    g = tuple(_inner(rows[i], f) for i in range(n))

    det = _det(rows)
    if det.is_zero:
        report = InvertibilityReport(None, None, det, NotUnit("determinant is zero"))
        return g, report
    det_verdict = is_unit(det)
    if isinstance(det_verdict, NotUnit):
        return g, InvertibilityReport(None, None, det, det_verdict)

    f_invertible = certified_invertible(f)
    if not f_invertible:
        return g, InvertibilityReport(False, None, det, det_verdict)

    x = list(witness) if witness is not None else None
    if x is None and n == 2:
        sol = solve_bezout(f[0], f[1])
        x = [sol.alpha, sol.beta]
    y = None
    if x is not None:
        x = [as_element(v) for v in x]
        if not (_inner(x, f) - ONE).is_zero:
            raise NotASolution("supplied witness does not satisfy <f, x> = 1")
        adj = _adjugate(rows)
        inv_det = det.inverse()
        y = tuple(_inner([adj[j][i] for j in range(n)], x) * inv_det for i in range(n))
        if not (_inner(list(y), list(g)) - ONE).is_zero:
            raise AssertionError("transported witness must satisfy <g, y> = 1")
    return g, InvertibilityReport(True, y, det, det_verdict)


def _det(rows: list[list[DiscElement]]) -> DiscElement:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ZERO
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def _adjugate(rows: list[list[DiscElement]]) -> list[list[DiscElement]]:
    n = len(rows)
    if n == 1:
        return [[ONE]]
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = _det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj
