"""The three-pair obstruction harness.

The triple (1, 0), (1, z^2), (n^2 z^2, 1) is pairwise sign-linked yet resists
joint stabilization; the harness certifies the geometry (singular points at
+-1/sqrt(n) with multiplier n), reduces candidate search to a single gain h
(1 + h z^2 and n^2 z^2 + h must both be units), and reports bounded-search
evidence.  NoWitnessFound is evidence, never a proof; a WitnessFound outcome
would contradict the obstruction and is treated as a build failure by the
test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .cert import NotUnit, UnitCertificate, certified_invertible, is_unit
from .config import EVAL_DEN_FLOOR
from .element import DiscElement, as_element, element
from .errors import EvalNearPole
from .poly import RealPoly
from .reduce import SearchOptions
from .roots import min_root_modulus
from .signs import SignReport, SignVerdict, is_sign_linked


@dataclass(frozen=True)
class TripleInstance:
    """The three pairs with their pairwise sign reports ((1,2), (1,3), (2,3))."""

    n: int
    pairs: tuple[tuple[DiscElement, DiscElement], ...]
    sign_reports: tuple[SignReport, SignReport, SignReport]


class FalsifyVerdict(Enum):
    NO_WITNESS_FOUND = "no-witness-found"
    WITNESS_FOUND = "witness-found"


@dataclass(frozen=True)
class FalsificationReport:
    n: int
    best_margin: float
    best_gain: RealPoly
    budget_used: int
    verdict: FalsifyVerdict


def make_triple(n: int) -> TripleInstance:
    """Construct and certify the n-th triple: pairwise invertible and sign-linked."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    one = element(1)
    zero = element(0)
    z2 = element(RealPoly([0, 0, 1]))
    nz2 = element(RealPoly([0, 0, n * n]))
    pairs = ((one, zero), (one, z2), (nz2, one))
    for pr in pairs:
        if not certified_invertible(list(pr)):
            raise AssertionError("triple pair failed invertibility certification")
    reports = (
        is_sign_linked(pairs[0], pairs[1]),
        is_sign_linked(pairs[0], pairs[2]),
        is_sign_linked(pairs[1], pairs[2]),
    )
    for rep in reports:
        if rep.verdict is SignVerdict.NOT_SIGN_LINKED:
            raise AssertionError("triple pairs must be pairwise sign-linked")
    return TripleInstance(n, pairs, reports)


def verify_candidate(t: TripleInstance, alpha, beta):
    """Unit verdicts for the three targets alpha, alpha + beta z^2, n^2 alpha z^2 + beta."""
    alpha, beta = as_element(alpha), as_element(beta)
    out = []
    for f, g in t.pairs:
        target = alpha * f + beta * g
        if target.is_zero:
            out.append(NotUnit("target is the zero element"))
        else:
            out.append(is_unit(target))
    return tuple(out)


def falsify(t: TripleInstance, opts: SearchOptions | None = None) -> FalsificationReport:
    """Bounded search for a joint stabilizer of the triple.

    Any candidate with an invertible first target normalizes to alpha = 1,
    beta = h, leaving two polynomial targets 1 + h z^2 and n^2 z^2 + h.  The
    gain stream is seeded and independent of n, so margins are comparable
    across n at a fixed seed.  Scores come from batched companion
    eigenvalues; the best candidate (and every float-positive one) is
    re-certified through the exact path before the report is written.
    """
    opts = opts or SearchOptions()
    gains = _gain_stream(opts)
    n2 = float(t.n * t.n)

    best_score = -math.inf
    best_gain: RealPoly | None = None
    witness_gain: RealPoly | None = None
    used = 0
    for block in _blocks(gains, 4096):
        used += len(block)
        floats = [[float(c) for c in h.coeffs] for h in block]
        score = np.minimum(
            _batch_margin([_first_target(fs) for fs in floats]),
            _batch_margin([_second_target(fs, n2) for fs in floats]),
        )
        idx = int(np.argmax(score))
        if score[idx] > best_score:
            best_score = float(score[idx])
            best_gain = block[idx]
        # float-positive candidates are potential witnesses: certify exactly
        for j in np.nonzero(score > 0.0)[0]:
            if _certified_witness(t, block[int(j)]):
                witness_gain = block[int(j)]
                break
        if witness_gain is not None:
            break

    assert best_gain is not None
    if witness_gain is not None:
        margin = _certified_margin(t, witness_gain)
        return FalsificationReport(t.n, margin, witness_gain, used, FalsifyVerdict.WITNESS_FOUND)
    margin = _certified_margin(t, best_gain)
    return FalsificationReport(t.n, margin, best_gain, used, FalsifyVerdict.NO_WITNESS_FOUND)


def interpolation_constraints(n: int) -> list[tuple[complex, float]]:
    """Values any Bezout cofactor alpha of (z^2, 1 - n^2 z^4) must take.

    At each zero w of the second element, alpha(w) * w^2 = 1, so alpha is
    pinned to n at +-1/sqrt(n) and to -n at +-i/sqrt(n).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    r = 1.0 / math.sqrt(n)
    return [
        (complex(r, 0.0), float(n)),
        (complex(-r, 0.0), float(n)),
        (complex(0.0, r), float(-n)),
        (complex(0.0, -r), float(-n)),
    ]


def obstruction_map(n: int, gain, p: complex) -> complex:
    """The quotient z^2 (n^2 z^2 + h) / (1 + h z^2) at one point.

    Diagnostic only: for admissible gains it takes the value 1 exactly at
    +-1/sqrt(n) and +-i/sqrt(n), which is what dooms candidate searches.
    """
    gain = as_element(gain)
    p = complex(p)
    hv = gain(p)
    den = 1.0 + hv * p * p
    if abs(den) < max(EVAL_DEN_FLOOR, 1e-300):
        raise EvalNearPole("1 + h(p) p^2 vanishes at the diagnostic point")
    return p * p * (n * n * p * p + hv) / den


# -- internals ----------------------------------------------------------------------


def _gain_stream(opts: SearchOptions) -> list[RealPoly]:
    """Deterministic candidate gains: a constant ladder, then dyadic randoms."""
    out: list[RealPoly] = []
    ladder: list[Fraction] = []
    for k in range(1, 13):
        ladder.extend([Fraction(k, 2), Fraction(-k, 2), Fraction(1, 2 * k), Fraction(-1, 2 * k)])
    out.extend(RealPoly([c]) for c in ladder)
    rng = np.random.default_rng(opts.seed)
    while len(out) < opts.budget:
        deg = int(rng.integers(0, opts.max_degree + 1))
        scale = float(2.0 ** rng.integers(-2, 4))
        ints = rng.integers(-256, 257, size=deg + 1)
        out.append(RealPoly([Fraction(int(v), 256) * Fraction(scale) for v in ints]))
    return out[: opts.budget]


def _blocks(items, size):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _first_target(h: list[float]) -> list[float]:
    out = [0.0] * (len(h) + 2)
    out[0] = 1.0
    for k, c in enumerate(h):
        out[k + 2] += c
    return out


def _second_target(h: list[float], n2: float) -> list[float]:
    out = [0.0] * max(3, len(h))
    for k, c in enumerate(h):
        out[k] += c
    out[2] += n2
    return out


def _batch_margin(rows: list[list[float]]) -> np.ndarray:
    """min |root| - 1 for each coefficient row (ascending), batched by degree."""
    out = np.empty(len(rows))
    groups: dict[int, list[int]] = {}
    for i, row in enumerate(rows):
        d = len(row) - 1
        while d > 0 and row[d] == 0.0:
            d -= 1
        groups.setdefault(d, []).append(i)
    for d, idxs in groups.items():
        if d == 0:
            for i in idxs:
                out[i] = math.inf if rows[i][0] != 0.0 else -1.0
            continue
        mat = np.array([rows[i][: d + 1] for i in idxs])
        monic = mat / mat[:, -1:]
        comp = np.zeros((len(idxs), d, d))
        if d > 1:
            comp[:, 1:, :-1] = np.eye(d - 1)
        comp[:, :, -1] = -monic[:, :d]
        eig = np.linalg.eigvals(comp)
        out[np.array(idxs)] = np.abs(eig).min(axis=1) - 1.0
    return out


def _certified_margin(t: TripleInstance, gain: RealPoly) -> float:
    a = _first_poly(gain)
    b = _second_poly(gain, t.n)
    margins = []
    for p in (a, b):
        if p.is_zero:
            return -1.0
        try:
            margins.append(min_root_modulus(p) - 1.0)
        except Exception:
            margins.append(float(_batch_margin([p.coeffs_float()])[0]))
    return min(margins)


def _certified_witness(t: TripleInstance, gain: RealPoly) -> bool:
    try:
        verdicts = verify_candidate(t, element(1), element(gain))
    except Exception:
        return False
    return all(isinstance(v, UnitCertificate) for v in verdicts)


def _first_poly(gain: RealPoly) -> RealPoly:
    return RealPoly([1]) + gain * RealPoly([0, 0, 1])


def _second_poly(gain: RealPoly, n: int) -> RealPoly:
    return RealPoly([0, 0, n * n]) + gain
