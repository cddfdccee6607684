"""Local analysis at a prime p.

Newton polygons, (e, f) splitting data of monic integer polynomials over Q_p in
the tame, Ore-regular case, and Frobenius cycle types at unramified primes.

Splitting is computed cluster by cluster: for each irreducible factor phi of
f mod p with multiplicity k > 1, f is expanded in powers of a monic integer
lift of phi and the principal part of the resulting phi-polygon is read off.
Factors of f mod p coprime to phi contribute only units to that polygon, so no
explicit Hensel separation is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .algebra import check_prime, discriminant, valuation
from .errors import DegenerateInput, DomainError, IrregularCase, RamifiedPrime, WildCase
from .factor import (
    _deriv,
    _divmod,
    _divmod_z,
    _gcd,
    _red,
    _to_ints_mod,
    factor_mod_p_lists,
)


@dataclass(frozen=True)
class CycleType:
    """Cycle type of a permutation, parts in decreasing order."""

    parts: tuple

    def __init__(self, parts):
        ps = tuple(sorted((int(x) for x in parts), reverse=True))
        if not ps or any(x < 1 for x in ps):
            raise DomainError(f"invalid cycle type {parts!r}")
        object.__setattr__(self, "parts", ps)

    @classmethod
    def parse(cls, text):
        """Parse a dash-joined partition such as ``"2-1"``."""
        try:
            return cls(int(x) for x in str(text).split("-"))
        except ValueError:
            raise DomainError(f"invalid cycle type {text!r}") from None

    @classmethod
    def trivial(cls, n):
        return cls([1] * n)

    @property
    def n(self):
        return sum(self.parts)

    @property
    def order(self):
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.parts, 1)

    def is_trivial(self):
        return all(x == 1 for x in self.parts)

    def part_set(self):
        return frozenset(self.parts)

    def power(self, a):
        out = []
        for length in self.parts:
            g = math.gcd(length, a)
            out.extend([length // g] * g)
        return CycleType(out)

    def __str__(self):
        return "-".join(str(x) for x in self.parts)


@dataclass(frozen=True)
class SplittingType:
    """Multiset of (ramification index e, residue degree f) pairs."""

    pairs: tuple

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", tuple(sorted((int(e), int(f)) for e, f in pairs)))

    @property
    def degree(self):
        return sum(e * f for e, f in self.pairs)

    def e_set(self):
        return frozenset(e for e, _ in self.pairs)

    def is_unramified(self):
        return all(e == 1 for e, _ in self.pairs)

    def disc_exponent(self):
        """Sum of (e - 1) f: the p-adic valuation of the field discriminant when tame."""
        return sum((e - 1) * f for e, f in self.pairs)

    def inertia_cycle_type(self):
        """Cycle type of an inertia generator acting on the roots: e repeated f times."""
        return CycleType([e for e, f in self.pairs for _ in range(f)])

    def __str__(self):
        return "{" + ", ".join(f"({e},{f})" for e, f in self.pairs) + "}"


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull; segments are (slope, horizontal length), slopes increasing."""

    vertices: tuple
    segments: tuple


def lower_hull(points):
    """Vertices of the lower convex hull of points with distinct abscissae."""
    pts = sorted(points)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            cross = (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox)
            if cross > 0:
                break
            hull.pop()
        hull.append(pt)
    return hull


def polygon_from_points(points):
    verts = lower_hull(points)
    segs = tuple(
        (Fraction(y1 - y0) / (x1 - x0), x1 - x0)
        for (x0, y0), (x1, y1) in zip(verts, verts[1:])
    )
    return NewtonPolygon(tuple(verts), segs)


def newton_polygon(f, p):
    """Newton polygon of an integer polynomial at p (powers of the variable stripped)."""
    check_prime(p)
    if f.is_zero():
        raise DegenerateInput("Newton polygon of the zero polynomial")
    cs = f.int_coeffs()
    return polygon_from_points([(i, valuation(c, p)) for i, c in enumerate(cs) if c])


def _vp_list(a, p):
    return min(valuation(c, p) for c in a if c)


# -- residual polynomials over F_q = F_p[z]/(phi) -----------------------------


class _Fq:
    """Arithmetic in F_p[z]/(phi); elements are tuples of ints (low degree first)."""

    def __init__(self, phi, p):
        self.phi = phi
        self.p = p
        self.k = len(phi) - 1
        self.q = p**self.k
        self.zero = ()
        self.one = (1,)

    def norm(self, a):
        return tuple(_divmod(list(a), self.phi, self.p)[1])

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(n)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return self.norm([-c for c in a])

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self.norm(out)

    def pow(self, a, e):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        return self.pow(a, self.q - 2)

    def scalar(self, c):
        return self.norm([c])


def _fq_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _fq_divmod(F, a, b):
    a = _fq_trim(a)
    b = _fq_trim(b)
    inv = F.inv(b[-1])
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    quo = [F.zero] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = F.mul(rem[i], inv)
        quo[i - db] = c
        if c:
            for j, y in enumerate(b):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, y))
    return _fq_trim(quo), _fq_trim(rem[:db])


def _fq_gcd(F, a, b):
    a, b = _fq_trim(a), _fq_trim(b)
    while b:
        a, b = b, _fq_divmod(F, a, b)[1]
    return a


def _fq_mulmod(F, a, b, m):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _fq_divmod(F, out, m)[1]


def _fq_factor_degrees(F, R):
    """Degrees of the irreducible factors of a squarefree R over F_q."""
    R = _fq_trim(R)
    deriv = _fq_trim([F.mul(F.scalar(i), c) for i, c in enumerate(R)][1:])
    if len(_fq_gcd(F, R, deriv)) > 1:
        raise IrregularCase("residual polynomial is inseparable")
    degrees = []
    x = [F.zero, F.one]
    h = x
    d = 0
    f = R
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        # h <- h^q mod f
        e, base, acc = F.q, h, [F.one]
        while e:
            if e & 1:
                acc = _fq_mulmod(F, acc, base, f)
            base = _fq_mulmod(F, base, base, f)
            e >>= 1
        h = acc
        diff = _fq_trim([F.sub(h[i] if i < len(h) else F.zero, x[i] if i < len(x) else F.zero)
                         for i in range(max(len(h), len(x)))])
        g = _fq_gcd(F, f, diff)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = _fq_divmod(F, f, g)[0]
            h = _fq_divmod(F, h, f)[1]
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return degrees


def _residual_factor_degrees(coeffs, phi, p):
    """Factor degrees over F_q of the residual polynomial with given F_q coefficients."""
    if len(phi) == 2:
        R = [c[0] if c else 0 for c in coeffs]
        R = _red(R, p)
        if len(_gcd(R, _deriv(R, p), p)) > 1:
            raise IrregularCase("residual polynomial is inseparable")
        return [len(g) - 1 for g, _ in factor_mod_p_lists(R, p)]
    return _fq_factor_degrees(_Fq(phi, p), list(coeffs))


def _cluster(f, phi, k, p):
    """(e, f) pairs for the roots of f reducing to the roots of phi (multiplicity k)."""
    deg_phi = len(phi) - 1
    if k == 1:
        return [(1, deg_phi)]
    expansion = []
    g = list(f)
    for _ in range(k + 1):
        q, r = _divmod_z(g, phi)
        expansion.append(r)
        g = q
    if not expansion[0]:
        quotient = _divmod_z(f, phi)[0]
        return [(1, deg_phi)] + _cluster(quotient, phi, k - 1, p)
    points = [(j, _vp_list(a, p)) for j, a in enumerate(expansion) if a]
    assert points[-1] == (k, 0)
    F = _Fq(phi, p) if deg_phi > 1 else None
    pairs = []
    verts = lower_hull(points)
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        length, drop = x1 - x0, y0 - y1
        g = math.gcd(length, drop)
        e, h = length // g, drop // g
        if e % p == 0:
            raise WildCase(f"ramification index {e} divisible by {p}")
        coeffs = []
        for t in range(g + 1):
            j = x0 + t * e
            height = y0 - t * h
            a = expansion[j]
            if a and _vp_list(a, p) == height:
                scaled = [c // p**height for c in a]
                if F is None:
                    coeffs.append((sum(c * pow(-phi[0], i, p) for i, c in enumerate(scaled)) % p,))
                else:
                    coeffs.append(F.norm(scaled))
            else:
                coeffs.append(())
        for d in _residual_factor_degrees(coeffs, phi, p):
            pairs.append((e, deg_phi * d))
    return pairs


def local_splitting(f, p):
    """(e, f) data of a monic integer polynomial over Q_p.

    Only the tame, Ore-regular situation is decided; otherwise WildCase or
    IrregularCase is raised.  p = 2 is rejected.
    """
    check_prime(p)
    if p == 2:
        raise DomainError("local_splitting rejects p = 2")
    if not f.is_monic():
        raise DomainError("local_splitting expects a monic polynomial")
    fi = f.int_coeffs()
    if discriminant(f) == 0:
        raise DegenerateInput("polynomial is not separable")
    pairs = []
    for phi, k in factor_mod_p_lists(fi, p):
        pairs.extend(_cluster(fi, phi, k, p))
    st = SplittingType(pairs)
    assert st.degree == f.degree
    return st


def frobenius_cycle_type(f, p):
    """Degrees of the irreducible factors of f mod p, for p not dividing disc(f)."""
    check_prime(p)
    if valuation(discriminant(f), p) > 0:
        raise RamifiedPrime(f"{p} divides the discriminant of {f}")
    return CycleType(len(g) - 1 for g, mult in factor_mod_p_lists(_to_ints_mod(f, p), p)
                     for _ in range(mult))


def tame_disc_check(f, p, s):
    """v_p(disc f) >= sum (e-1) f over s, with even difference."""
    v = valuation(discriminant(f), p)
    diff = v - s.disc_exponent()
    return diff >= 0 and diff % 2 == 0
