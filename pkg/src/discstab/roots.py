"""Complex root finding for rational-coefficient polynomials.

Multiplicities are obtained exactly up front (square-free decomposition over
the rationals) so the simultaneous iteration only ever sees simple roots.
Real roots are isolated exactly by Sturm bisection and seeded on the axis;
the remaining roots start as conjugate-symmetric pairs and are driven by
Aberth-Ehrlich sweeps.  After convergence the set is re-symmetrized so
complex roots come out in exact conjugate pairs.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .config import DEGREE_CAP, ROOT_RESIDUAL_TOL
from .errors import NoConvergence
from .poly import RealPoly, real_roots_interval, squarefree_decomposition

_MAX_SWEEPS = 400
_SEED_WIDTH = Fraction(1, 10**17)


def roots(p: RealPoly, tol: float = ROOT_RESIDUAL_TOL) -> list[tuple[complex, int]]:
    """All complex roots of p with exact multiplicities.

    Returns (root, multiplicity) pairs sorted by (real, imag).  Every reported
    root r satisfies |p(r)| <= tol * (1 + sum |coeffs|); otherwise
    NoConvergence is raised.  Complex roots are exactly conjugate-paired.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no root set")
    if p.degree > DEGREE_CAP:
        raise ValueError(f"degree {p.degree} exceeds the cap of {DEGREE_CAP}")
    if p.degree == 0:
        return []

    out: list[tuple[complex, int]] = []
    # roots at the origin are exact: strip them first
    coeffs = list(p.coeffs)
    k0 = 0
    while coeffs[k0] == 0:
        k0 += 1
    if k0:
        out.append((0j, k0))
        coeffs = coeffs[k0:]
    stripped = RealPoly(coeffs)
    if stripped.degree >= 1:
        for factor, mult in squarefree_decomposition(stripped):
            for r in _simple_roots(factor):
                out.append((r, mult))

    scale = 1.0 + float(p.l1())
    for r, _ in out:
        if abs(p(r)) > tol * scale:
            raise NoConvergence(
                f"root residual {abs(p(r)):.3e} exceeds {tol:.1e} * {scale:.3e}"
            )
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def min_root_modulus(p: RealPoly, tol: float = ROOT_RESIDUAL_TOL) -> float:
    """Smallest |root|, or +inf for nonzero constants."""
    rs = roots(p, tol)
    if not rs:
        return math.inf
    return min(abs(r) for r, _ in rs)


# -- internals -------------------------------------------------------------------


def _simple_roots(f: RealPoly) -> list[complex]:
    """Roots of a squarefree rational polynomial, conjugate-paired exactly."""
    n = f.degree
    if n == 1:
        return [complex(-f.coeffs[0] / f.coeffs[1])]
    if n == 2:
        return _quadratic(f)
    reals = _certified_real_roots(f)
    n_complex = n - len(reals)
    if n_complex == 0:
        return [complex(r) for r in reals]
    cs = np.array(_normalized_floats(f), dtype=complex)
    best: np.ndarray | None = None
    best_res = math.inf
    for attempt in range(3):
        z0 = np.concatenate(
            [np.array(reals, dtype=complex), _pair_seeds(cs, n_complex, attempt)]
        )
        z = _newton_polish(cs, _aberth(cs, z0))
        res = float(np.max(np.abs(_horner(cs, z))))
        if res < best_res:
            best, best_res = z, res
        if res <= 1e-12 * (1.0 + float(np.sum(np.abs(cs)))):
            break
    assert best is not None
    return _symmetrize([complex(z) for z in best], [float(c.real) for c in cs])


def _certified_real_roots(f: RealPoly) -> list[float]:
    bound = 2 + max(abs(c) / abs(f.lc) for c in f.coeffs)
    ivs = real_roots_interval(f, -bound, bound, width=_SEED_WIDTH)
    return [iv.float_mid() for iv in ivs]


def _quadratic(f: RealPoly) -> list[complex]:
    c, b, a = f.coeffs
    disc = b * b - 4 * a * c
    if disc >= 0:
        s = math.sqrt(disc)
        r1 = (-float(b) + s) / (2 * float(a))
        r2 = (-float(b) - s) / (2 * float(a))
        return [complex(r1), complex(r2)]
    s = math.sqrt(-disc) / (2 * float(a))
    re = -float(b) / (2 * float(a))
    return [complex(re, s), complex(re, -s)]


def _normalized_floats(f: RealPoly) -> list[float]:
    m = max(abs(c) for c in f.coeffs)
    return [float(c / m) for c in f.coeffs]


def _pair_seeds(cs: np.ndarray, n_complex: int, attempt: int) -> np.ndarray:
    """Conjugate-symmetric off-axis starting pairs."""
    n = len(cs) - 1
    lead = abs(cs[-1])
    tail = abs(cs[0])
    rho = (tail / lead) ** (1.0 / n) if tail > 0 else 0.5
    rho = min(max(rho, 1e-3), 1e3) * (1.0 + 0.31 * attempt)
    pairs = n_complex // 2
    pts = []
    for i in range(pairs):
        phi = math.pi * (2 * i + 1) / (2 * pairs + 1) * (1.0 - 0.05 * attempt)
        r = rho * (1.0 + 0.12 * (i + 1) / max(n, 1))
        pts.append(cmath.rect(r, phi))
        pts.append(cmath.rect(r, -phi))
    return np.array(pts, dtype=complex)


def _aberth(cs: np.ndarray, z0: np.ndarray) -> np.ndarray:
    n = len(cs) - 1
    dcs = cs[1:] * np.arange(1, n + 1)
    z = z0.copy()
    for _ in range(_MAX_SWEEPS):
        pv = _horner(cs, z)
        dv = _horner(dcs, z)
        dv = np.where(dv == 0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-300, denom)
        corr = w / denom
        z = z - corr
        if np.all(np.abs(corr) <= 1e-14 * (1.0 + np.abs(z))):
            break
    return z


def _newton_polish(cs: np.ndarray, z: np.ndarray, sweeps: int = 4) -> np.ndarray:
    """A few plain Newton steps per root to tighten forward residuals."""
    n = len(cs) - 1
    dcs = cs[1:] * np.arange(1, n + 1)
    for _ in range(sweeps):
        pv = _horner(cs, z)
        dv = _horner(dcs, z)
        step = np.where(dv == 0, 0.0, pv / np.where(dv == 0, 1.0, dv))
        z2 = z - step
        improved = np.abs(_horner(cs, z2)) <= np.abs(pv)
        z = np.where(improved, z2, z)
    return z


def _horner(cs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, cs[-1])
    for c in cs[-2::-1]:
        acc = acc * z + c
    return acc


def _residual(cs: list[float], r: complex) -> float:
    acc = 0j
    for c in reversed(cs):
        acc = acc * r + c
    return abs(acc)


def _symmetrize(zs: list[complex], cs: list[float]) -> list[complex]:
    """Force exact conjugate pairing; realify only when the residual allows it."""
    scale = 1.0 + sum(abs(c) for c in cs)
    floor = 1e-13 * scale
    real_out: list[complex] = []
    rest: list[complex] = []
    for z in zs:
        if abs(z.imag) <= 1e-9 * (1.0 + abs(z)) and _residual(cs, complex(z.real)) <= max(
            4.0 * _residual(cs, z), floor
        ):
            real_out.append(complex(z.real))
        else:
            rest.append(z)
    upper = sorted((z for z in rest if z.imag > 0), key=lambda z: (z.real, z.imag))
    lower = [z for z in rest if z.imag <= 0]
    paired: list[complex] = []
    for u in upper:
        if not lower:
            real_out.append(complex(u.real))
            continue
        j = min(range(len(lower)), key=lambda i: abs(lower[i] - u.conjugate()))
        v = lower.pop(j)
        m = (u + v.conjugate()) / 2
        paired.extend([m, m.conjugate()])
    # stragglers in the lower half-plane pair among themselves or realify
    while lower:
        u = lower.pop()
        if lower:
            j = min(range(len(lower)), key=lambda i: abs(lower[i] - u.conjugate()))
            v = lower.pop(j)
            m = (u + v.conjugate()) / 2
            paired.extend([m, m.conjugate()])
        else:
            real_out.append(complex(u.real))
    return real_out + paired
