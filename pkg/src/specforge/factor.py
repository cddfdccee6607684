"""Factorization over F_p, Hensel lifting, and factorization over Q.

Internally polynomials are plain ``list[int]`` (lowest degree first) reduced
modulo some integer m.  Public functions take and return ``UniPoly``.
"""

from __future__ import annotations

import math
import os
import random
from fractions import Fraction
from itertools import combinations

from sympy import nextprime

from .algebra import UniPoly, check_prime, discriminant
from .errors import DegenerateInput, LiftError


def default_seed():
    return int(os.environ.get("SPECFORGE_SEED", "0"))


# -- list-polynomial arithmetic modulo m -----------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _red(a, m):
    return _trim([c % m for c in a])


def _add(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _red(out, m)


def _divmod(a, b, m):
    """Division by b whose leading coefficient is a unit mod m."""
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], _red(rem, m)
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] * inv % m
        if c:
            quo[i - db] = c
            for j, y in enumerate(b):
                rem[i - db + j] = (rem[i - db + j] - c * y) % m
    return _trim(quo), _red(rem[:db], m)


def _mod(a, b, m):
    return _divmod(a, b, m)[1]


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a, b, p):
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0],
            [c * inv % p for c in t0])


def _powmod(base, e, mod, p):
    result = [1]
    base = _mod(base, mod, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), mod, p)
        base = _mod(_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _deriv(a, p):
    return _red([i * c for i, c in enumerate(a)][1:], p)


def _eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


# -- F_p factorization -------------------------------------------------------


def _squarefree_decomposition(f, p):
    """[(g, mult)] with f = prod g^mult, g squarefree, for monic f over F_p."""
    out = []
    if len(f) <= 1:
        return out
    df = _deriv(f, p)
    if not df:
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, e * p) for g, e in _squarefree_decomposition(root, p)]
    c = _gcd(f, df, p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        fac = _divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((_monic(fac, p), i))
        w = y
        c = _divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in _squarefree_decomposition(_monic(root, p), p))
    return out


def _distinct_degree(f, p):
    """[(g, d)] with g the product of all degree-d irreducible factors of f."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
    if len(f) > 1:
        out.append((_monic(f, p), len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    """Split f (product of distinct degree-d irreducibles) completely."""
    n = len(f) - 1
    if n == d:
        return [f]
    if d == 1 and p < 50:
        return [[(-r) % p, 1] for r in range(p) if _eval(f, r, p) == 0]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                b = _mod(_mul(b, b, p), f, p)
                t = _add(t, b, p)
            g = _gcd(f, t, p)
        else:
            b = _powmod(a, (p**d - 1) // 2, f, p)
            g = _gcd(f, _sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            q = _divmod(f, g, p)[0]
            return (_equal_degree(g, d, p, rng)
                    + _equal_degree(_monic(q, p), d, p, rng))


def _canonical_key(g, p):
    return (len(g), [_sym(c, p) for c in g])


def factor_mod_p_lists(f, p, seed=None):
    """Monic irreducible factors of f mod p as ``[(list, mult)]``, sorted."""
    f = _red(list(f), p)
    if not f:
        raise DegenerateInput(f"polynomial vanishes mod {p}")
    f = _monic(f, p)
    rng = random.Random(default_seed() if seed is None else seed)
    out = []
    for g, mult in _squarefree_decomposition(f, p):
        for block, d in _distinct_degree(g, p):
            for h in _equal_degree(block, d, p, rng):
                out.append((_monic(h, p), mult))
    out.sort(key=lambda t: _canonical_key(t[0], p))
    return out


def factor_mod_p(f, p, seed=None):
    """Factor f modulo p into monic irreducibles with multiplicities.

    Factors use symmetric residues and are ordered by degree, then
    lexicographically on their coefficient lists (lowest degree first).
    """
    check_prime(p)
    ints = _to_ints_mod(f, p)
    return [(UniPoly([_sym(c, p) for c in g], f.var), mult)
            for g, mult in factor_mod_p_lists(ints, p, seed)]


def factor_degrees_mod_p(f, p, seed=None):
    """Degrees of the irreducible factors of f mod p, with multiplicity."""
    return sorted(len(g) - 1 for g, mult in factor_mod_p_lists(_to_ints_mod(f, p), p, seed)
                  for _ in range(mult))


def _to_ints_mod(f, p):
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise DegenerateInput(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return out


def is_squarefree_mod_p(f, p):
    g = _red(list(f), p)
    if len(g) < 2:
        return bool(g)
    return len(_gcd(g, _deriv(g, p), p)) == 1


# -- Hensel lifting ----------------------------------------------------------


def _hensel_step(f, g, h, s, t, m):
    m2 = m * m
    e = _sub(f, _mul(g, h, m2), m2)
    q, r = _divmod(_mul(s, e, m2), h, m2)
    g2 = _add(_add(g, _mul(t, e, m2), m2), _mul(q, g, m2), m2)
    h2 = _add(h, r, m2)
    b = _sub(_add(_mul(s, g2, m2), _mul(t, h2, m2), m2), [1], m2)
    c, d = _divmod(_mul(s, b, m2), h2, m2)
    s2 = _sub(s, d, m2)
    t2 = _sub(_sub(t, _mul(t, b, m2), m2), _mul(c, g2, m2), m2)
    return g2, h2, s2, t2, m2


def _lift_pair(f, g, h, p, k):
    """Quadratic Hensel lifting of f = g*h mod p to mod p^k (lists, monic f)."""
    gcd, s, t = _xgcd(g, h, p)
    if gcd != [1]:
        raise LiftError("factors are not coprime mod p")
    # normalise so that deg s < deg h and deg t < deg g
    if len(h) > 1:
        q, s = _divmod(s, h, p)
        t = _add(t, _mul(q, g, p), p)
    else:
        s, t = [], [pow(h[0], -1, p)]
    m = p
    target = p**k
    while m < target:
        g, h, s, t, m = _hensel_step(f, g, h, s, t, m)
    return _red(g, target), _red(h, target)


def hensel_lift(f, p, pair, k):
    """Lift f = g*h mod p to (G, H) with f = G*H mod p^k.

    f must be monic; g is normalised to be monic.  Coefficients of the result
    are symmetric residues mod p^k.
    """
    check_prime(p)
    g, h = pair
    fi = f.int_coeffs()
    if fi[-1] != 1:
        raise LiftError("hensel_lift expects a monic polynomial")
    gl = _red(_to_ints_mod(g, p), p)
    hl = _red(_to_ints_mod(h, p), p)
    if not gl or not hl:
        raise LiftError("zero factor")
    lg = gl[-1]
    gl = _monic(gl, p)
    hl = [c * lg % p for c in hl]
    if _sub(_red(fi, p), _mul(gl, hl, p), p):
        raise LiftError("f is not congruent to g*h mod p")
    G, H = _lift_pair(fi, gl, hl, p, k)
    mod = p**k
    return (UniPoly([_sym(c, mod) for c in G], f.var),
            UniPoly([_sym(c, mod) for c in H], f.var))


def _lift_all(f, factors, p, k):
    if len(factors) == 1:
        return [_red(f, p**k)]
    half = len(factors) // 2
    g = [1]
    for a in factors[:half]:
        g = _mul(g, a, p)
    h = [1]
    for a in factors[half:]:
        h = _mul(h, a, p)
    G, H = _lift_pair(f, g, h, p, k)
    return _lift_all(G, factors[:half], p, k) + _lift_all(H, factors[half:], p, k)


# -- factorization over Z ----------------------------------------------------


def _squarefree_factors(f):
    """Yun's algorithm; returns [(monic squarefree g, multiplicity)]."""
    from .algebra import poly_gcd

    out = []
    if f.degree < 1:
        return out
    a0 = poly_gcd(f, f.derivative())
    b = f // a0
    c = f.derivative() // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _mignotte(g):
    norm2 = sum(c * c for c in g)
    return (1 << (len(g) - 1)) * (math.isqrt(norm2) + 1)


def _exact_divide_z(f, g):
    """f / g over Z if g divides f exactly (g monic), else None."""
    q, r = _divmod_z(f, g)
    return None if r else q


def _divmod_z(f, g):
    rem = list(f)
    dg = len(g) - 1
    if len(rem) <= dg:
        return [], _trim(rem)
    quo = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        quo[i - dg] = c
        if c:
            for j, y in enumerate(g):
                rem[i - dg + j] -= c * y
    return _trim(quo), _trim(rem[:dg])


def _factor_squarefree_z(f, seed):
    """Zassenhaus: irreducible monic factors of monic squarefree f in Z[x]."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    disc = discriminant(UniPoly(f)).numerator
    best = None
    p = 2
    tried = 0
    while tried < 5:
        p = nextprime(p)
        if disc % p == 0:
            continue
        facs = [g for g, _ in factor_mod_p_lists(f, p, seed)]
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            return [f]
    p, facs = best
    bound = 2 * _mignotte(f)
    k = 1
    while p**k <= bound:
        k += 1
    mod = p**k
    lifted = _lift_all(f, facs, p, k)
    result = []
    remaining = list(range(len(lifted)))
    g = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(remaining, size):
            cand = [1]
            for i in subset:
                cand = _mul(cand, lifted[i], mod)
            cand = [_sym(c, mod) for c in cand]
            q = _exact_divide_z(g, cand)
            if q is not None:
                result.append(cand)
                g = q
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            size += 1
    result.append(g)
    return result


def _poly_key(g):
    return (len(g), list(g))


def factor_over_z(f, seed=None):
    """Irreducible factors over Q of a monic integer polynomial.

    Factors are monic integer polynomials listed with repetition so that
    their product is exactly f, ordered by degree then coefficient list.
    """
    if not f.is_monic():
        raise DegenerateInput("factor_over_z expects a monic polynomial")
    f.int_coeffs()
    out = []
    for g, mult in _squarefree_factors(f):
        gi = g.int_coeffs()
        for h in _factor_squarefree_z(gi, seed):
            out.extend([h] * mult)
    out.sort(key=_poly_key)
    return [UniPoly(h, f.var) for h in out]


def is_irreducible_over_q(m):
    """Irreducibility over Q of a nonconstant polynomial with rational coefficients."""
    if m.degree < 1:
        return False
    g = monic_integral_scaling(m)
    facs = factor_over_z(g)
    return len(facs) == 1


def monic_integral_scaling(m):
    """Monic integer polynomial whose roots are c*(roots of m) for an integer c > 0."""
    prim = m.primitive()
    a = prim.lc.numerator
    d = prim.degree
    coeffs = [c.numerator * a ** (d - 1 - i) for i, c in enumerate(prim.coeffs[:-1])]
    return UniPoly(coeffs + [1], m.var)


def factor_over_q(m):
    """Monic irreducible factors over Q (with repetition) of a nonzero polynomial."""
    if m.degree < 1:
        return []
    prim = m.primitive()
    a = prim.lc.numerator
    g = monic_integral_scaling(m)
    # root x of m <-> root a*x of g
    out = []
    scale = UniPoly((0, Fraction(a)), m.var)
    for h in factor_over_z(g):
        out.append(h.compose(scale).monic())
    out.sort(key=lambda h: (h.degree, list(h.coeffs)))
    return out
