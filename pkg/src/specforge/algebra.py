"""Exact rational and polynomial arithmetic.

Univariate polynomials are immutable coefficient tuples over Q (lowest degree
first).  Bivariate polynomials P(T, Y) have integer coefficients and are stored
as a sparse map ``(deg_T, deg_Y) -> int``.  Nothing in here touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from sympy import factorint, isprime

from .errors import DegenerateInput, DomainError

Rat = Fraction


class Infinity:
    """Marker for the point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()


def check_prime(p):
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"{p!r} is not a prime")


def _vp_int(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(q, p):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    return _vp_int(abs(q.numerator), p) - _vp_int(q.denominator, p)


class UniPoly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="T"):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def x(cls, var="T"):
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var="T"):
        return cls((c,), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.lc == 1

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self):
        if not self.is_integral():
            raise DomainError(f"{self} has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and self.var == other.var
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other, self.var)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quo = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quo, self.var), UniPoly(rem[: other.degree], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self):
        return bool(self.coeffs)

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self):
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UniPoly([c * inv for c in self.coeffs], self.var)

    def with_var(self, var):
        return UniPoly(self.coeffs, var)

    def compose(self, g):
        acc = UniPoly((), g.var)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def reverse(self):
        return UniPoly(tuple(reversed(self.coeffs)), self.var)

    def content(self):
        """Positive rational c with self / c primitive in Z[X]."""
        if self.is_zero():
            return Fraction(0)
        num = reduce(math.gcd, (c.numerator for c in self.coeffs))
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self):
        """Primitive integer polynomial with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return UniPoly([x / c for x in self.coeffs], self.var)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return format_terms(
            [(c, i) for i, c in enumerate(self.coeffs)], lambda i: _mono(self.var, i)
        )


def _mono(var, i):
    if i == 0:
        return ""
    return var if i == 1 else f"{var}^{i}"


def format_terms(terms, mono):
    """Render ``[(coeff, key)]`` from highest to lowest as ``a*X^2 - b*X + c``."""
    parts = []
    for c, key in sorted(terms, key=lambda t: t[1], reverse=True):
        if c == 0:
            continue
        m = mono(key)
        mag = abs(c)
        if not m:
            body = str(mag)
        elif mag == 1:
            body = m
        else:
            body = f"{mag}*{m}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def poly_gcd(f, g):
    """Monic gcd over Q."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def resultant(f, g):
    """Res(f, g) over Q by the Euclidean algorithm."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    res = Fraction(1)
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return res * g.lc**m
        r = f % g
        if r.is_zero():
            return Fraction(0)
        if (m * n) % 2:
            res = -res
        res *= g.lc ** (m - r.degree)
        f, g = g, r


def discriminant(f):
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = f.degree
    if d < 1:
        raise DegenerateInput("discriminant of a constant")
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def squarefree_part(f):
    """Monic squarefree part over Q."""
    if f.degree < 1:
        return UniPoly.const(1, f.var)
    return (f // poly_gcd(f, f.derivative())).monic()


def taylor_shift(f, c):
    """g(X) = f(c + X)."""
    c = Fraction(c)
    acc = [Fraction(0)] * len(f.coeffs)
    # Horner with (X + c): acc <- acc*(X + c) + coeff
    size = 0
    for coeff in reversed(f.coeffs):
        for i in range(size, 0, -1):
            acc[i] = acc[i - 1] + c * acc[i]
        acc[0] = c * acc[0] + coeff
        size += 1
    return UniPoly(acc, f.var)


def reciprocal_minpoly(m):
    """Monic minimal polynomial of 1/t for the roots t of ``m``.

    ``INFINITY`` maps to T (1/oo = 0) and T maps to the constant 1, the
    minimal polynomial convention for oo.
    """
    if m is INFINITY:
        return UniPoly.x("T")
    if m.degree < 1 or not m.is_monic():
        raise DomainError(f"{m} is not a monic polynomial of positive degree")
    if m.degree == 1 and m[0] == 0:
        return UniPoly.const(1, m.var)
    from .factor import is_irreducible_over_q

    if not is_irreducible_over_q(m):
        raise DomainError(f"{m} is reducible over Q")
    return m.reverse().monic()


def height(f):
    """Max absolute value of the (integer) coefficients; 0 for the zero polynomial."""
    return max((abs(c) for c in f.int_coeffs()), default=0)


def integral_monic(f):
    """(g, D) with g = D^d f(W/D) monic in Z[W] for monic f in Q[Y].

    g defines the same algebra as f; D is the least positive integer that works.
    """
    if not f.is_monic():
        raise DomainError("integral_monic expects a monic polynomial")
    d = f.degree
    need = {}
    for i, c in enumerate(f.coeffs[:-1]):
        for q, k in factorint(c.denominator).items():
            need[q] = max(need.get(q, 0), -(-k // (d - i)))
    D = 1
    for q, k in need.items():
        D *= q**k
    g = UniPoly([c * D ** (d - i) for i, c in enumerate(f.coeffs)], f.var)
    return g, D


class BiPoly:
    """Integer polynomial in T and Y, sparse ``{(deg_T, deg_Y): coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def T(cls):
        return cls({(1, 0): 1})

    @classmethod
    def Y(cls):
        return cls({(0, 1): 1})

    @property
    def deg_y(self):
        return max((j for _, j in self.terms), default=-1)

    @property
    def deg_t(self):
        return max((i for i, _ in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def coeff_y(self, j):
        """Coefficient of Y^j as a polynomial in T."""
        d = self.deg_t
        return UniPoly([self.terms.get((i, j), 0) for i in range(d + 1)], "T")

    def y_coeffs(self):
        return [self.coeff_y(j) for j in range(self.deg_y + 1)]

    def is_monic_in_y(self):
        lead = self.coeff_y(self.deg_y)
        return lead.degree == 0 and lead.lc == 1

    def specialize(self, t):
        """P(t, Y) as a polynomial in Y."""
        t = Fraction(t)
        return UniPoly([c(t) for c in self.y_coeffs()], "Y")

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @staticmethod
    def _lift(other):
        return BiPoly.const(other) if isinstance(other, int) else other

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BiPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        def mono(key):
            i, j = key
            parts = [m for m in (_mono("Y", j), _mono("T", i)) if m]
            return "*".join(parts)

        # order by Y-degree then T-degree
        return format_terms([(v, (k[1], k[0])) for k, v in self.terms.items()],
                            lambda key: mono((key[1], key[0])))


def _interpolate(xs, ys, var):
    """Lagrange interpolation through (xs, ys), exact."""
    result = UniPoly((), var)
    X = UniPoly.x(var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = UniPoly.const(1, var)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * (X - xj)
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result


def disc_y(P):
    """Discriminant of P(T, Y) with respect to Y, as a polynomial in T.

    Computed by evaluating the univariate discriminant at enough integer
    points and interpolating; the degree bound (2n - 1) deg_T(P) comes from
    the Sylvester matrix.
    """
    n = P.deg_y
    if n < 1:
        raise DegenerateInput("disc_y needs deg_Y >= 1")
    if not P.is_monic_in_y():
        raise DomainError("disc_y expects P monic in Y")
    if n == 1:
        return UniPoly.const(1, "T")
    bound = (2 * n - 1) * max(P.deg_t, 0)
    xs = list(range(bound + 1))
    ys = [discriminant(P.specialize(x)) for x in xs]
    return _interpolate(xs, ys, "T")
