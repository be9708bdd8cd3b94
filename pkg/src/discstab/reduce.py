"""Reducing an invertible pair: find h with f + h*g a certified unit.

Existence is equivalent to f keeping one strict sign on the real zeros of g
inside [-1, 1]; that check runs first and its failure is a hard error, not a
search miss.  When neither element is already a unit, the search pins the
disc zeros of g: with P an exact divisor of the numerator of g carrying every
zero of g on the closed disc, candidates u = f + s*P (s a low-degree real
polynomial) automatically agree with f at those zeros, and h = s*P/g stays in
the algebra because the pin cancels exactly.

The search itself is deterministic given the seed: least-squares collocation
fits toward constant targets, a rational-coefficient random stream, and
greedy coordinate refinement of the incumbent, scored by (interior zero
count, boundary margin) and certified exactly before anything is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .cert import NotUnit, UnitCertificate, certified_invertible, has_circle_root, is_unit, unit_by_root_location
from .config import NEAR_CIRCLE_TOL
from .element import ZERO, DiscElement, as_element, element
from .errors import (
    BudgetExhausted,
    IndeterminateError,
    NoConvergence,
    NonUnitDenominator,
    NotInvertiblePair,
    ReducibilityViolated,
)
from .poly import ONE as P_ONE
from .poly import RealPoly, squarefree_decomposition
from .signs import constant_sign_on_real_zeros


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for the candidate search; defaults suit desk-scale inputs."""

    max_degree: int = 6
    budget: int = 20000
    seed: int = 0
    margin_target: float = 1e-6

    def __post_init__(self):
        if self.max_degree < 0 or self.budget <= 0 or self.margin_target <= 0:
            raise ValueError("search options must be positive")


class Strategy(Enum):
    ZERO = "zero"
    UNIT_DENOMINATOR = "unit-denominator"
    PINNED_SEARCH = "pinned-search"


@dataclass(frozen=True)
class ReductionWitness:
    gain: DiscElement
    unit_cert: UnitCertificate
    strategy: Strategy


def pin_polynomial(g) -> RealPoly:
    """Monic exact divisor of the numerator of g carrying its closed-disc zeros.

    Rational roots are split off individually (float-guided, verified
    exactly); a residual squarefree factor that cannot be split rationally is
    kept whole whenever any of its roots touches the closed disc, so the
    result always divides the numerator exactly.  Raises IndeterminateError
    when a factor has a root too close to the circle to classify.
    """
    p = g.num if hasattr(g, "num") else g
    if p.is_zero:
        raise ValueError("the zero element has no pin polynomial")
    if p.degree == 0:
        return P_ONE
    pin = P_ONE
    for factor, mult in squarefree_decomposition(p):
        rem = factor
        for r in _rational_roots(factor):
            rem = rem.exact_div(RealPoly([-r, 1]))
            if abs(r) <= 1:
                pin = pin * RealPoly([-r, 1]) ** mult
        if rem.degree >= 1 and _touches_closed_disc(rem):
            pin = pin * rem**mult
    return pin.monic()


def _rational_roots(f: RealPoly) -> list[Fraction]:
    """Exact rational roots of f, guessed from float roots and verified exactly."""
    from .roots import roots as _roots

    found = []
    for r, _ in _roots(f):
        if abs(r.imag) > 1e-8:
            continue
        for dmax in (1, 16, 1024, 10**6, 10**9):
            cand = Fraction(r.real).limit_denominator(dmax)
            if f.at(cand) == 0:
                found.append(cand)
                break
    return sorted(set(found))


def _touches_closed_disc(f: RealPoly) -> bool:
    if has_circle_root(f):
        return True
    verdict, mn = unit_by_root_location(f)
    if verdict is None:
        raise IndeterminateError(
            f"factor root at modulus {mn!r} is within {NEAR_CIRCLE_TOL} of the circle"
        )
    return not verdict


def reduce_pair(f, g, opts: SearchOptions | None = None) -> ReductionWitness:
    """Find h with f + h*g a certified unit, or report why none can exist.

    Stages: h = 0 when f is already a unit; h = (1 - f)/g when g is a unit;
    otherwise the pinned search.  Raises ReducibilityViolated iff the
    constant-sign condition fails, BudgetExhausted when the condition holds
    but the bounded search missed (a larger degree/budget may still succeed).
    """
    f, g = as_element(f), as_element(g)
    opts = opts or SearchOptions()
    if not certified_invertible([f, g]):
        raise NotInvertiblePair("reduction needs a certified invertible pair")
    sign_report = constant_sign_on_real_zeros(f, g)
    if not sign_report.holds:
        raise ReducibilityViolated(
            "f changes sign on the real zeros of g; no reducing gain exists"
        )

    if not f.is_zero:
        cert = _unit_or_none(f)
        if cert is not None and cert.margin >= opts.margin_target:
            return ReductionWitness(ZERO, cert, Strategy.ZERO)
    if not g.is_zero:
        gcert = _unit_or_none(g)
        if gcert is not None:
            h = (1 - f) / g
            u = f + h * g
            ucert = is_unit(u)
            assert isinstance(ucert, UnitCertificate)
            return ReductionWitness(h, ucert, Strategy.UNIT_DENOMINATOR)
    if g.is_zero:
        raise BudgetExhausted(
            "g is zero, so f + h*g is f for every h and its margin cannot improve"
        )
    return _pinned_search(f, g, opts, sign_report)


def _unit_or_none(a: DiscElement) -> UnitCertificate | None:
    try:
        verdict = is_unit(a)
    except IndeterminateError:
        return None
    return verdict if isinstance(verdict, UnitCertificate) else None


# -- the pinned search ------------------------------------------------------------------

# dev hook for benchmarking phase combinations; all phases on in production
_PHASES = {"fits", "interp", "nm", "push"}


def _pinned_search(f, g, opts: SearchOptions, sign_report) -> ReductionWitness:
    pin = pin_polynomial(g)
    base = np.array((f.num).coeffs_float())
    mul = np.array((pin * f.den).coeffs_float())
    dim = opts.max_degree + 1

    rng = np.random.default_rng(opts.seed)
    evaluations = 0
    certify_failures = 0
    best_score = (math.inf, math.inf)
    best_vec = np.zeros(dim)
    found: list[ReductionWitness] = []

    def score_vec(vec: np.ndarray) -> tuple[float, float]:
        return _float_score_coeffs(_combine(base, mul, vec))

    def consider(vec: np.ndarray) -> bool:
        """Score one candidate; certify when the float picture clears the bar.
        Returns True when a certified witness was produced (stored in found)."""
        nonlocal evaluations, best_score, best_vec, certify_failures
        evaluations += 1
        score = score_vec(vec)
        if score < best_score:
            padded = np.zeros(dim)
            padded[: min(dim, len(vec))] = vec[:dim]
            best_score, best_vec = score, padded
        count, neg_margin = score
        if count == 0 and -neg_margin >= opts.margin_target and certify_failures < 64:
            s = RealPoly([Fraction(v).limit_denominator(10**6) for v in vec])
            witness = _certify_candidate(f, g, pin, s, opts)
            if witness is not None:
                found.append(witness)
                return True
            certify_failures += 1
        return False

    def out_of_budget() -> bool:
        return evaluations >= opts.budget or bool(found)

    if "fits" in _PHASES:
        for vec in _structured_fits(f, pin, opts, sign_report, rng):
            if out_of_budget():
                break
            if consider(vec[:dim] if len(vec) > dim else vec):
                return found[0]

    # interpolation over root-parametrized units: starts inside the right
    # winding class (every root outside the disc)
    if "interp" in _PHASES and not out_of_budget():
        for vec in _unit_interpolation_candidates(f, pin, base, mul, opts, rng):
            if out_of_budget():
                break
            if consider(vec):
                return found[0]

    # smooth-penalty multistart: minimize the squared radial excess of the
    # interior zeros (flat exactly when every zero clears 1.02), polishing
    # each converged point with linearized root pushes
    if "nm" in _PHASES and not out_of_budget():
        from scipy.optimize import minimize

        def penalty(vec: np.ndarray) -> float:
            nonlocal evaluations
            evaluations += 1
            u = _combine(base, mul, vec)
            ut = np.trim_zeros(u, "b")
            if len(ut) <= 1:
                return 0.0
            try:
                rr = np.roots(ut[::-1] / np.max(np.abs(ut)))
            except np.linalg.LinAlgError:
                return 1e9
            ex = np.maximum(0.0, 1.02 - np.abs(rr))
            return float(np.sum(ex * ex))

        starts: list[np.ndarray] = [best_vec.copy()]
        while not out_of_budget():
            if not starts:
                deg = int(rng.integers(0, dim))
                v = np.zeros(dim)
                scale = float(rng.choice([0.5, 2.0, 8.0, 32.0]))
                v[: deg + 1] = rng.normal(0.0, scale, size=deg + 1)
                starts.append(v)
            x0 = starts.pop()
            room = opts.budget - evaluations
            if room <= dim + 2:
                break
            res = minimize(
                penalty,
                x0,
                method="Nelder-Mead",
                options={"maxiter": 1500, "maxfev": min(room, 2200), "fatol": 1e-14, "xatol": 1e-12},
            )
            if consider(res.x):
                return found[0]
            if "push" in _PHASES and res.fun > 0 and not out_of_budget():
                vec, cur = res.x.copy(), score_vec(res.x)
                for _ in range(40):
                    if out_of_budget():
                        break
                    ds = _root_push_direction(vec, base, mul, dim)
                    if ds is None:
                        break
                    step, moved = 1.0, False
                    for _ in range(6):
                        if out_of_budget():
                            break
                        trial = vec + step * ds
                        if consider(trial):
                            return found[0]
                        sc = score_vec(trial)
                        if sc < cur:
                            vec, cur, moved = trial, sc, True
                            break
                        step *= 0.5
                    if not moved:
                        break

    if found:
        return found[0]
    raise BudgetExhausted(
        f"no certified gain after {evaluations} candidates "
        f"(best interior count {best_score[0]!r})"
    )


def _certify_candidate(f, g, pin, s, opts) -> ReductionWitness | None:
    try:
        u = element(f.num + s * pin * f.den, f.den)
        cert = is_unit(u)
        if isinstance(cert, NotUnit) or cert.margin < opts.margin_target:
            return None
        h = element(s * pin * g.den, g.num)
    except (IndeterminateError, NonUnitDenominator, NoConvergence):
        return None
    if not (f + h * g - u).is_zero:
        raise AssertionError("pinned candidate failed the exact identity")
    return ReductionWitness(h, cert, Strategy.PINNED_SEARCH)


def _float_score_coeffs(u: np.ndarray) -> tuple[float, float]:
    """(interior zero count, -margin) from float coefficients; smaller is better."""
    u = np.trim_zeros(u, "b")
    if len(u) == 0:
        return (math.inf, math.inf)
    if len(u) == 1:
        return (0, -math.inf)
    u = u / np.max(np.abs(u))
    try:
        rr = np.roots(u[::-1])
    except np.linalg.LinAlgError:
        return (math.inf, math.inf)
    if len(rr) == 0:
        return (0, -math.inf)
    mods = np.abs(rr)
    count = int(np.sum(mods < 1.0 - NEAR_CIRCLE_TOL))
    margin = float(mods.min()) - 1.0
    return (count, -margin)


def _combine(base: np.ndarray, mul: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Float coefficients of base + mul * vec (ascending, any lengths)."""
    u = np.convolve(mul, vec)
    out = np.zeros(max(len(u), len(base)))
    out[: len(u)] += u
    out[: len(base)] += base
    return out


def _root_push_direction(vec, base, mul, dim):
    """Least-squares gain update pushing every interior zero radially outward."""
    u = _combine(base, mul, vec)
    ut = np.trim_zeros(u, "b")
    if len(ut) <= 1:
        return None
    try:
        rr = np.roots(ut[::-1] / np.max(np.abs(ut)))
    except np.linalg.LinAlgError:
        return None
    inside = rr[np.abs(rr) < 1.02]
    if len(inside) == 0:
        return None
    targets = inside / np.abs(inside) * np.maximum(1.08, np.abs(inside) * 1.15)
    rows = []
    rhs = []
    for w in targets:
        pw = np.polyval(mul[::-1], w)
        uw = np.polyval(u[::-1], w)
        row = pw * w ** np.arange(dim)
        rows.extend([row.real, row.imag])
        rhs.extend([-uw.real, -uw.imag])
    try:
        ds, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    except np.linalg.LinAlgError:
        return None
    return ds


def _unit_interpolation_candidates(f, pin, base, mul, opts, rng) -> list[np.ndarray]:
    """Gains recovered from units interpolating the pinned values.

    Valid u = numerator of f + s*pin agree with the numerator of f at every
    pin root; here u is parametrized directly by its roots (kept outside the
    closed disc, conjugate-symmetric) plus a real scale, and Newton steps move
    the roots until the pin conditions hold.  Each converged configuration is
    projected back to gain coefficients by linear least squares.
    """
    from .roots import roots as _roots

    if pin.degree < 1:
        return []
    try:
        pin_roots = [r for r, _ in _roots(pin, 1e-7)]
    except Exception:
        return []
    reps = [z for z in pin_roots if z.imag > 1e-12] + [
        complex(z.real) for z in pin_roots if abs(z.imag) <= 1e-12
    ]
    targets = np.array([complex(np.polyval(base[::-1], z)) for z in reps])
    if np.any(np.abs(targets) < 1e-12) or not np.all(np.isfinite(targets)):
        return []

    out: list[np.ndarray] = []
    dim = opts.max_degree + 1
    for d in sorted({0, 2, min(4, opts.max_degree), opts.max_degree}):
        m = max(len(base) - 1, len(mul) - 1 + d)  # degree of the interpolating unit
        for attempt in range(3):
            cand = _newton_unit_interpolation(reps, targets, pin_roots, m, rng)
            if cand is None:
                continue
            tau, w = cand
            u = np.real(_poly_from_roots(tau, w))
            n = max(len(u), len(base))
            dlen = min(max(n - len(mul) + 1, 1), dim)
            design = np.zeros((n, dlen))
            for k in range(dlen):
                design[k : k + len(mul), k] = mul
            rhs = np.zeros(n)
            rhs[: len(u)] += u
            rhs[: len(base)] -= base
            try:
                s, *_ = np.linalg.lstsq(design, rhs, rcond=None)
            except np.linalg.LinAlgError:
                continue
            out.append(s)
    return out


def _poly_from_roots(tau: float, w: np.ndarray) -> np.ndarray:
    c = np.array([tau], dtype=complex)
    for r in w:
        c = np.convolve(c, np.array([-r, 1.0]))
    return c


def _newton_unit_interpolation(reps, targets, pin_roots, m, rng):
    """Newton/least-squares on root positions; roots stay outside the disc."""
    pairs_needed = m // 2
    reals_needed = m - 2 * pairs_needed
    start_pairs = []
    for z in pin_roots:
        if z.imag > 1e-12:
            az = abs(z)
            start_pairs.append(z / (az * az) * 1.25 if az < 1 else z * 1.05)
    k = 0
    while len(start_pairs) < pairs_needed:
        ang = math.pi * (0.25 + 0.5 * rng.random())
        start_pairs.append((1.8 + 1.5 * k / max(pairs_needed, 1)) * complex(math.cos(ang), math.sin(ang)))
        k += 1
    start_pairs = start_pairs[:pairs_needed]
    start_reals = [(-1.0) ** j * (1.6 + 0.7 * j + 0.2 * rng.random()) for j in range(reals_needed)]

    # parameters: tau, (re, im) per pair, one real per real root
    theta = np.concatenate(
        [[1.0], *[[z.real, z.imag] for z in start_pairs], start_reals]
    )

    def unpack(th):
        tau = th[0]
        w = []
        idx = 1
        for _ in range(pairs_needed):
            w.append(complex(th[idx], th[idx + 1]))
            idx += 2
        for _ in range(reals_needed):
            w.append(complex(th[idx]))
            idx += 1
        return tau, np.array(w, dtype=complex)

    def residual(th):
        tau, w = unpack(th)
        full = np.concatenate([w[:pairs_needed], np.conj(w[:pairs_needed]), w[pairs_needed:]])
        vals = np.array([tau * np.prod(z - full) for z in reps])
        return vals - targets, full, vals

    # initial scale from the first representative
    _, full0, vals0 = residual(theta)
    if abs(vals0[0]) > 1e-300:
        theta[0] = float(np.real(targets[0] / (vals0[0] / theta[0])))
        if theta[0] == 0.0:
            theta[0] = 1.0

    n_params = len(theta)
    for _ in range(60):
        res, full, vals = residual(theta)
        if not np.all(np.isfinite(res)):
            return None
        if np.max(np.abs(res)) <= 1e-9 * (1.0 + np.abs(targets).max()):
            break
        jac = np.zeros((2 * len(reps), n_params))
        for i, z in enumerate(reps):
            # d u / d tau
            du_tau = vals[i] / theta[0] if theta[0] != 0 else 0.0
            jac[2 * i, 0] = np.real(du_tau)
            jac[2 * i + 1, 0] = np.imag(du_tau)
            idx = 1
            for j in range(pairs_needed):
                wj = full[j]
                dz1 = z - wj
                dz2 = z - np.conj(wj)
                if abs(dz1) < 1e-12 or abs(dz2) < 1e-12:
                    return None
                d_re = -vals[i] * (1.0 / dz1 + 1.0 / dz2)
                d_im = -vals[i] * (1j / dz1 - 1j / dz2)
                jac[2 * i, idx] = np.real(d_re)
                jac[2 * i + 1, idx] = np.imag(d_re)
                jac[2 * i, idx + 1] = np.real(d_im)
                jac[2 * i + 1, idx + 1] = np.imag(d_im)
                idx += 2
            for j in range(reals_needed):
                wj = full[2 * pairs_needed + j]
                dz = z - wj
                if abs(dz) < 1e-12:
                    return None
                dd = -vals[i] / dz
                jac[2 * i, idx] = np.real(dd)
                jac[2 * i + 1, idx] = np.imag(dd)
                idx += 1
        rhs = np.empty(2 * len(reps))
        rhs[0::2] = -res.real
        rhs[1::2] = -res.imag
        try:
            step, *_ = np.linalg.lstsq(jac, rhs, rcond=None)
        except np.linalg.LinAlgError:
            return None
        theta = theta + 0.8 * step
        # keep every root outside the closed disc
        idx = 1
        for _ in range(pairs_needed):
            z = complex(theta[idx], theta[idx + 1])
            az = abs(z)
            if az < 1.02:
                z = z / max(az, 1e-9) * 1.02
                theta[idx], theta[idx + 1] = z.real, z.imag
            idx += 2
        for _ in range(reals_needed):
            if abs(theta[idx]) < 1.02:
                theta[idx] = 1.02 if theta[idx] >= 0 else -1.02
            idx += 1
    tau, w = unpack(theta)
    if tau == 0.0:
        return None
    full = np.concatenate([w[:pairs_needed], np.conj(w[:pairs_needed]), w[pairs_needed:]])
    return tau, full


def _structured_fits(f, pin, opts, sign_report, rng) -> list[np.ndarray]:
    """Cheap high-value starting points: constants, constant-target fits, and
    least-squares fits toward randomized zero-free targets (products of roots
    outside the disc), which can track the values pinned at the zeros of g."""
    target_sign = 1.0
    if sign_report.witnesses:
        target_sign = float(sign_report.witnesses[0].sign)
    out = [np.array([float(c)]) for c in (1, -1, 2, -2, 0.5, -0.5, 4, -4, 0.25, -0.25)]

    zs = np.concatenate(
        [
            np.exp(2j * np.pi * np.arange(64) / 64),
            0.55 * np.exp(2j * np.pi * np.arange(24) / 24),
            0.85 * np.exp(2j * np.pi * np.arange(24) / 24),
        ]
    )
    fv = np.array([f(z) for z in zs])
    pv = np.array([complex(pin(z)) for z in zs])
    degrees = sorted({min(opts.max_degree, d) for d in (1, 2, 4, opts.max_degree)})
    designs = {}
    for deg in degrees:
        design = np.vander(zs, deg + 1, increasing=True) * pv[:, None]
        designs[deg] = np.concatenate([design.real, design.imag])

    def fit(target_vals: np.ndarray):
        rhs = np.concatenate([(target_vals - fv).real, (target_vals - fv).imag])
        for deg in degrees:
            try:
                sol, *_ = np.linalg.lstsq(designs[deg], rhs, rcond=None)
            except np.linalg.LinAlgError:
                continue
            out.append(sol)

    for t in (target_sign, 2 * target_sign, 0.5 * target_sign, -target_sign):
        fit(np.full(zs.shape, complex(t)))
    # randomized zero-free targets
    fscale = float(np.median(np.abs(fv))) or 1.0
    for _ in range(24):
        deg_v = int(rng.integers(1, 5))
        roots_v: list[complex] = []
        while len(roots_v) < deg_v:
            if deg_v - len(roots_v) >= 2 and rng.random() < 0.5:
                r = 1.05 + 3.0 * rng.random()
                th = rng.random() * math.pi
                roots_v.extend([r * complex(math.cos(th), math.sin(th)),
                                r * complex(math.cos(th), -math.sin(th))])
            else:
                roots_v.append(complex((1.05 + 3.0 * rng.random()) * (1 if rng.random() < 0.5 else -1)))
        v = np.ones_like(zs)
        for r in roots_v:
            v = v * (zs - r)
        vscale = float(np.median(np.abs(v))) or 1.0
        for sgn in (target_sign, -target_sign):
            fit(v * (sgn * fscale / vscale))
    return out
