"""Exact arithmetic for univariate polynomials with rational coefficients.

`RealPoly` stores coefficients in ascending power order (index k holds the
z^k coefficient) as `fractions.Fraction` values with trailing zeros stripped;
the zero polynomial is the empty tuple.  Ring operations, division, extended
gcd, square-free decomposition and Sturm-based real root isolation are all
exact.  Floating point enters only through evaluation at complex arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .config import ISOLATION_WIDTH

Rational = Union[int, Fraction]


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary expansion, no rounding; callers rationalize explicitly
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a rational coefficient")


class RealPoly:
    """Univariate polynomial over the rationals in canonical ascending form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "RealPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        """Leading coefficient (of the zero polynomial: 0)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "RealPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RealPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RealPoly":
        return RealPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RealPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RealPoly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "RealPoly":
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RealPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["RealPoly", "RealPoly"]:
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q: list[Fraction] = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lc
            if c == 0:
                continue
            q[k - d] = c
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] -= c * b
        return RealPoly(q), RealPoly(rem[:d] if d > 0 else [])

    def __floordiv__(self, other) -> "RealPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RealPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RealPoly":
        """Division that must leave no remainder."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("exact_div: division left a remainder")
        return q

    # -- evaluation ----------------------------------------------------------

    def at(self, x: Rational) -> Fraction:
        """Exact evaluation at a rational point."""
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, z):
        """Evaluate: exact at int/Fraction arguments, Horner in floats otherwise."""
        if isinstance(z, (int, Fraction)):
            return self.at(z)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def coeffs_float(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # -- calculus and norms --------------------------------------------------

    def derivative(self) -> "RealPoly":
        return RealPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def l1(self) -> Fraction:
        """Sum of absolute coefficient values; bounds |p| on the closed disc."""
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def derivative_l1(self) -> Fraction:
        """Sum k*|c_k|; bounds |p'| on the closed disc."""
        return sum((k * abs(c) for k, c in enumerate(self.coeffs)), Fraction(0))

    def monic(self) -> "RealPoly":
        if self.is_zero:
            return self
        lc = self.lc
        if lc == 1:
            return self
        return RealPoly(c / lc for c in self.coeffs)

    def reciprocal(self) -> "RealPoly":
        """z^deg * p(1/z): the coefficient sequence reversed."""
        return RealPoly(reversed(self.coeffs))

    def scale(self, c) -> "RealPoly":
        c = _coerce(c)
        return RealPoly(a * c for a in self.coeffs)

    # -- comparisons and housekeeping -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RealPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RealPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"RealPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self)


ZERO = RealPoly()
ONE = RealPoly([1])
Z = RealPoly([0, 1])


def _as_poly(value) -> RealPoly:
    if isinstance(value, RealPoly):
        return value
    return RealPoly([_coerce(value)])


def format_poly(p: RealPoly) -> str:
    """Render ascending-power text such as '1 - z^2' or '7 + 10*z + 5*z^2'."""
    if p.is_zero:
        return "0"
    pieces = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "z" if mag == 1 else f"{mag}*z"
        else:
            body = f"z^{k}" if mag == 1 else f"{mag}*z^{k}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- gcd machinery -------------------------------------------------------------


def poly_gcd(p: RealPoly, q: RealPoly) -> RealPoly:
    """Monic gcd over the rationals (gcd with 0 is the other argument, monic)."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def gcd_extended(p: RealPoly, q: RealPoly) -> tuple[RealPoly, RealPoly, RealPoly]:
    """Extended Euclid: returns (d, a, b) with a*p + b*q = d, d the monic gcd.

    Exact over the rationals; raises if both inputs are zero.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd_extended(0, 0) is undefined")
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero:
        qq, rr = divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    lc = r0.lc
    d = r0.monic()
    a = RealPoly(c / lc for c in s0.coeffs)
    b = RealPoly(c / lc for c in t0.coeffs)
    return d, a, b


def squarefree_decomposition(p: RealPoly) -> list[tuple[RealPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime squarefree factors with multiplicity.

    The product of factor^multiplicity equals p up to a nonzero constant.
    """
    if p.is_zero:
        raise ValueError("no squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree < 1:
        return []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    w = p.exact_div(g)
    y = dp.exact_div(g)
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        f = poly_gcd(w, z)
        if f.degree > 0:
            out.append((f, k))
        w = w.exact_div(f) if f.degree > 0 else w
        y = z.exact_div(f) if f.degree > 0 else z
        k += 1
    return out


# -- Sturm sequences and real root isolation ------------------------------------


def _primitive_int(p: RealPoly) -> RealPoly:
    """Scale by a positive rational so coefficients are coprime integers."""
    if p.is_zero:
        return p
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    nums = [int(c * den) for c in p.coeffs]
    g = 0
    for n in nums:
        g = gcd(g, abs(n))
    return RealPoly(Fraction(n, g) for n in nums)


def sturm_chain(p: RealPoly) -> list[RealPoly]:
    chain = [_primitive_int(p)]
    dp = p.derivative()
    if not dp.is_zero:
        chain.append(_primitive_int(dp))
        while chain[-1].degree > 0:
            rem = chain[-2] % chain[-1]
            if rem.is_zero:
                break
            chain.append(_primitive_int(-rem))
    return chain


def _variations(chain: list[RealPoly], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q.at(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RealPoly, lo: Rational, hi: Rational) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    lo, hi = _coerce(lo), _coerce(hi)
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0 or lo >= hi:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval [lo, hi] for one real root; lo == hi marks an exact hit.

    `factor` is the exact squarefree factor vanishing at the root, kept so the
    interval can be refined further; `multiplicity` is the root's multiplicity
    in the original polynomial.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: RealPoly

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def float_mid(self) -> float:
        return float(self.mid)

    def refine(self, width: Fraction) -> "RootInterval":
        if self.is_exact or self.hi - self.lo <= width:
            return self
        lo, hi = _bisect_to_width(self.factor, self.lo, self.hi, width)
        return RootInterval(lo, hi, self.multiplicity, self.factor)


def _bisect_to_width(f: RealPoly, lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink (lo, hi] around the single simple root of f; exact hits collapse."""
    flo = f.at(lo)
    if flo == 0:
        # isolation keeps the left endpoint off the root; defensive only
        return lo, lo
    fhi = f.at(hi)
    if fhi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = f.at(mid)
        if fmid == 0:
            return mid, mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return lo, hi


def _isolate_squarefree(
    f: RealPoly, lo: Fraction, hi: Fraction
) -> list[tuple[Fraction, Fraction, RealPoly]]:
    """Disjoint isolating intervals (a, b] for all roots of squarefree f in (lo, hi].

    Returns (a, b, w) where w is a divisor of f that vanishes at the isolated
    root but not at a; an exact rational root r comes back degenerate as
    (r, r, w).  Exact midpoint hits deflate f so later intervals never carry a
    polynomial vanishing at their own endpoints.
    """
    out: list[tuple[Fraction, Fraction, RealPoly]] = []
    chain = sturm_chain(f)

    def recurse(a: Fraction, b: Fraction, va: int, vb: int):
        n = va - vb
        if n == 0:
            return
        fb = f.at(b)
        if n == 1 and fb != 0:
            out.append((a, b, f))
            return
        mid = (a + b) / 2
        if f.at(mid) == 0:
            g = f.exact_div(RealPoly([-mid, 1]))
            out.append((mid, mid, f))
            out.extend(_isolate_squarefree(g, a, mid))
            out.extend(_isolate_squarefree(g, mid, b))
            return
        vm = _variations(chain, mid)
        recurse(a, mid, va, vm)
        recurse(mid, b, vm, vb)

    if f.at(hi) == 0:
        f2 = f.exact_div(RealPoly([-hi, 1]))
        out.append((hi, hi, f))
        out.extend(_isolate_squarefree(f2, lo, hi))
        return out
    recurse(lo, hi, _variations(chain, lo), _variations(chain, hi))
    return out


def real_roots_interval(
    p: RealPoly,
    lo: Rational,
    hi: Rational,
    width: Fraction = ISOLATION_WIDTH,
) -> list[RootInterval]:
    """Exact isolation of the real roots of p in the closed interval [lo, hi].

    Returns refined `RootInterval`s (below `width` wide) sorted by position,
    with exact multiplicities from the square-free decomposition.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    lo, hi = _coerce(lo), _coerce(hi)
    if lo > hi:
        raise ValueError("empty interval")
    found: list[RootInterval] = []
    for factor, mult in squarefree_decomposition(p):
        if factor.at(lo) == 0:
            found.append(RootInterval(lo, lo, mult, factor))
            factor = factor.exact_div(RealPoly([-lo, 1]))
            if factor.degree < 1:
                continue
        for a, b, w in _isolate_squarefree(factor, lo, hi):
            found.append(RootInterval(a, b, mult, w).refine(width))
    found.sort(key=lambda r: (r.lo, r.hi))
    return found
