"""Analysis of a finite extension E/Q(T) given by P(T, Y).

Branch points come from the irreducible factors of disc_Y(P) plus possibly
infinity.  Inertia at a branch point is recorded only through its cycle type
in S_n, together with how it was obtained:

* ``exact_newton``: Newton-Puiseux analysis of P(t_b + S, Y) (or of
  S^deg_T(P) P(1/S, Y) at infinity) over Q((S)); rational points only.
* ``sampled_primes``: specialize at integers t0 with intersection
  multiplicity 1 at several good primes and read the local inertia action
  off the p-adic splitting.  This presumes the inertia prediction it checks.
* ``declared``: user data, cross-checked by sampling unless trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from sympy import primerange

from .algebra import (
    INFINITY,
    BiPoly,
    UniPoly,
    check_prime,
    disc_y,
    discriminant,
    integral_monic,
    reciprocal_minpoly,
    resultant,
    valuation,
)
from .errors import (
    DomainError,
    InconsistentSamples,
    IrregularCase,
    NoUsablePrime,
    WildCase,
    DegenerateInput,
)
from .factor import factor_over_q, factor_over_z, monic_integral_scaling
from .padic import CycleType, lower_hull, local_splitting

SAMPLE_PRIME_BOUND = 3000

DIVIDES_GROUP_ORDER = "DividesGroupOrder"
BRANCH_POINTS_MEET = "BranchPointsMeet"
FAILS_TO_UNITIZE = "FailsToUnitize"
VERTICAL_SURROGATE = "VerticalSurrogate"
RAMIFIES_IN_BRANCH_FIELD = "RamifiesInBranchField"


@dataclass(frozen=True)
class Provenance:
    kind: str
    primes: tuple = ()

    def to_json(self):
        return {"kind": self.kind, "primes": [str(p) for p in self.primes]}


@dataclass(frozen=True)
class BranchPoint:
    """A branch point: monic minimal polynomial over Q, or infinity."""

    point: object
    inertia: CycleType
    provenance: Provenance

    @property
    def is_infinity(self):
        return self.point is INFINITY

    @property
    def minpoly(self):
        return UniPoly.const(1) if self.is_infinity else self.point

    @property
    def reciprocal(self):
        return reciprocal_minpoly(self.point)

    @property
    def label(self):
        return point_label(self.point)

    def to_json(self):
        return {
            "point": self.label,
            "inertia": str(self.inertia),
            "provenance": self.provenance.to_json(),
        }


def point_label(point):
    return "oo" if point is INFINITY else str(point)


@dataclass(frozen=True)
class PrimeClassification:
    prime: int
    reasons: tuple = ()

    @property
    def good(self):
        return not self.reasons

    @property
    def verdict(self):
        return "Good" if self.good else "Bad"

    def to_json(self):
        return {"prime": str(self.prime), "verdict": self.verdict, "reasons": list(self.reasons)}


@dataclass(frozen=True, eq=False)
class ExtensionPresentation:
    """E/Q(T) generated by a root of P(T, Y), monic in Y.

    ``group_order`` is the order of the geometric Galois group (defaults to
    n!, the S_n case); ``closure_regular`` asserts that the Galois closure has
    no constant extension.  ``declared_inertia`` maps 1-based indices into
    :attr:`candidates` to cycle types.
    """

    P: BiPoly
    group_order: int = 0
    closure_regular: bool = False
    declared_inertia: dict = field(default_factory=dict)
    trust_declared: bool = False
    samples: int = 3

    def __post_init__(self):
        if self.P.deg_y < 2:
            raise DomainError("need degree n >= 2 in Y")
        if not self.P.is_monic_in_y():
            raise DomainError("P must be monic in Y")
        if self.disc.is_zero():
            raise DomainError("disc_Y(P) vanishes identically")
        if not self.group_order:
            object.__setattr__(self, "group_order", math.factorial(self.n))

    @property
    def n(self):
        return self.P.deg_y

    @cached_property
    def disc(self):
        return disc_y(self.P)

    @property
    def delta(self):
        return self.disc.degree

    @cached_property
    def candidates(self):
        """Irreducible factors of disc_Y(P) over Q, then infinity."""
        facs = sorted(set(factor_over_q(self.disc)), key=lambda h: (h.degree, list(h.coeffs)))
        return facs + [INFINITY]

    @cached_property
    def branch_points(self):
        return _compute_branch_points(self)

    @cached_property
    def _classification_cache(self):
        return {}

    @property
    def branch_count(self):
        """Number of branch points over the algebraic closure."""
        return sum(1 if bp.is_infinity else bp.point.degree for bp in self.branch_points)

    def is_symmetric(self):
        return self.group_order == math.factorial(self.n)

    def is_alternating(self):
        return self.n >= 3 and self.group_order * 2 == math.factorial(self.n)

    def to_json(self):
        return {
            "poly": str(self.P),
            "group_order": str(self.group_order),
            "closure_regular": self.closure_regular,
            "declared_inertia": {str(k): str(v) for k, v in sorted(self.declared_inertia.items())},
            "trust_declared": self.trust_declared,
        }


def trinomial(n, m, q, v):
    """P = Y^n - T^v Y^m + T^q, subject to n >= 3, gcd(m, n) = 1, q(n-m) - vn = 1."""
    if not (n >= 3 and 1 <= m <= n and math.gcd(m, n) == 1 and q * (n - m) - v * n == 1):
        raise DomainError(f"trinomial parameters (n={n}, m={m}, q={q}, v={v}) violate the constraints")
    return BiPoly({(0, n): 1, (v, m): -1, (q, 0): 1})


def trinomial_branch_value(n, m):
    return Fraction(m**m * (n - m) ** (n - m), n**n)


# -- prime classification -----------------------------------------------------


def _res(f, g):
    if f.degree == 0:
        return f.lc ** max(g.degree, 0)
    if g.degree == 0:
        return g.lc ** max(f.degree, 0)
    return resultant(f, g)


def _positive_val(q, p):
    return q != 0 and valuation(q, p) > 0


def _point_polys(point):
    m = UniPoly.const(1) if point is INFINITY else point
    return m, reciprocal_minpoly(point)


def classify_prime(ext, p):
    """Good/Bad verdict with every applicable reason.

    The classification is a conservative superset of the true bad primes:
    all candidate branch points take part, and vertical ramification and
    ramification in the branch-point field are replaced by divisibility tests.
    """
    check_prime(p)
    cache = ext._classification_cache
    if p in cache:
        return cache[p]
    reasons = []
    if ext.group_order % p == 0:
        reasons.append(DIVIDES_GROUP_ORDER)
    polys = [_point_polys(pt) for pt in ext.candidates]
    meet = False
    for i, (mi, ri) in enumerate(polys):
        for g in (mi, ri):
            if g.degree >= 2 and _positive_val(discriminant(g), p):
                meet = True
        for mj, rj in polys[i + 1:]:
            if _positive_val(_res(mi, mj), p) or _positive_val(_res(ri, rj), p):
                meet = True
    if meet:
        reasons.append(BRANCH_POINTS_MEET)
    if any(valuation(c, p) < 0 for m, r in polys for g in (m, r) for c in g.coeffs if c):
        reasons.append(FAILS_TO_UNITIZE)
    content = math.gcd(*(c.numerator for c in ext.disc.coeffs))
    if ext.disc.lc.numerator % p == 0 or content % p == 0:
        reasons.append(VERTICAL_SURROGATE)
    prod = UniPoly.const(1)
    for pt in ext.candidates:
        if pt is not INFINITY:
            prod = prod * pt
    if prod.degree >= 2 and discriminant(monic_integral_scaling(prod)).numerator % p == 0:
        reasons.append(RAMIFIES_IN_BRANCH_FIELD)
    result = PrimeClassification(p, tuple(reasons))
    cache[p] = result
    return result


def bad_primes(ext, bound=100):
    return [c for c in (classify_prime(ext, p) for p in primerange(2, bound)) if not c.good]


# -- witnesses and multiplicities ---------------------------------------------


def prime_divisor_witness(m, p):
    """Smallest residue r mod p with m(r) = 0 mod p, or None."""
    if m is INFINITY or m.degree < 1:
        return None
    if any(valuation(c, p) < 0 for c in m.coeffs if c):
        raise DomainError(f"{m} is not {p}-integral")
    cs = [c.numerator * pow(c.denominator, -1, p) % p for c in m.coeffs]
    for r in range(p):
        acc = 0
        for c in reversed(cs):
            acc = (acc * r + c) % p
        if acc == 0:
            return r
    return None


def exact_multiplicity_residue(m, p, a):
    """Integer x in [0, p^(a+1)) with v_p(m(x + u p^(a+1))) = a for all integers u.

    Start from the smallest root mod p, lift it along m to a root mod p^a using
    m'(r) != 0 mod p, then add p^a if the valuation overshoots.
    """
    from .errors import DerivativeVanishes, WitnessNotFound

    r = prime_divisor_witness(m, p)
    if r is None:
        raise WitnessNotFound(f"{m} has no root mod {p}")
    dm = m.derivative()
    if valuation(dm(r), p) > 0:
        raise DerivativeVanishes(f"{m}' vanishes at the root {r} mod {p}")
    x = r
    mod = p
    while mod < p**a:
        mod *= p
        val = m(x)
        inv = pow((dm(x).numerator * pow(dm(x).denominator, -1, mod)) % mod, -1, mod)
        x = (x - (val.numerator * pow(val.denominator, -1, mod)) * inv) % mod
    if valuation(m(x), p) > a:
        x += p**a
    assert valuation(m(x), p) == a
    return x


# -- inertia: exact Newton-Puiseux over Q ------------------------------------


class _ExactUnavailable(Exception):
    pass


def _laurent_from_poly(f, shift=0):
    return {i + shift: c for i, c in enumerate(f.coeffs) if c}


def _laurent_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _laurent_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _substitute(F, c, h):
    """Coefficients in Y1 of sum_j F_j(S) (S^h (c + Y1))^j."""
    n = len(F) - 1
    out = [dict() for _ in range(n + 1)]
    for j, Fj in enumerate(F):
        if not Fj:
            continue
        base = {k + h * j: v for k, v in Fj.items()}
        # (c + Y1)^j = sum_i binom(j, i) c^(j-i) Y1^i
        for i in range(j + 1):
            coeff = math.comb(j, i) * Fraction(c) ** (j - i)
            if coeff:
                out[i] = _laurent_add(out[i], {k: v * coeff for k, v in base.items()})
    return out


def _puiseux_indices(F, positive_only=False, depth=0):
    """Ramification indices (with multiplicity) of the roots of F over Q((S))."""
    if depth > 40:
        raise _ExactUnavailable("recursion too deep")
    points = [(j, min(Fj)) for j, Fj in enumerate(F) if Fj]
    verts = lower_hull(points)
    out = []
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        length, drop = x1 - x0, y0 - y1
        if positive_only and drop <= 0:
            continue
        g = math.gcd(length, abs(drop)) if drop else length
        e, h = length // g, drop // g
        R = UniPoly([F[x0 + t * e].get(y0 - t * h, 0) for t in range(g + 1)], "x")
        if discriminant(R) != 0 if R.degree >= 1 else True:
            out.extend([e] * g)
            continue
        if e != 1:
            raise _ExactUnavailable("inseparable residual on a ramified segment")
        facs = factor_over_q(R)
        for psi in sorted(set(facs), key=lambda u: (u.degree, list(u.coeffs))):
            k = facs.count(psi)
            if k == 1:
                out.extend([1] * psi.degree)
            elif psi.degree == 1:
                c = -psi[0]
                out.extend(_puiseux_indices(_substitute(F, c, h), True, depth + 1))
            else:
                raise _ExactUnavailable("repeated irrational residual root")
    return out


def exact_inertia(ext, point):
    """Inertia cycle type at a rational point or infinity by Newton-Puiseux."""
    P = ext.P
    ys = P.y_coeffs()
    if point is INFINITY:
        D = P.deg_t
        F = [{D - i: c for i, c in enumerate(cj.coeffs) if c} for cj in ys]
    elif point.degree == 1:
        from .algebra import taylor_shift

        t_b = -point[0]
        F = [_laurent_from_poly(taylor_shift(cj, t_b)) for cj in ys]
    else:
        raise _ExactUnavailable("point is not rational")
    idx = _puiseux_indices(F)
    if sum(idx) != ext.n:
        raise _ExactUnavailable("index count mismatch")
    return CycleType(idx)


# -- inertia: sampling ---------------------------------------------------------


def _sample_specialization(ext, point, p):
    """(t0, monic integral polynomial) with intersection multiplicity 1 at p, or None."""
    if point is INFINITY:
        t0 = Fraction(1, p)
    else:
        if prime_divisor_witness(point, p) is None:
            return None
        t0 = Fraction(exact_multiplicity_residue(point, p, 1))
    f = ext.P.specialize(t0)
    g, _ = integral_monic(f)
    if discriminant(g) == 0:
        return None
    return t0, g


def sampled_inertia(ext, point, count=None, bound=SAMPLE_PRIME_BOUND):
    """Inertia type from the local splitting at several good primes.

    Returns (CycleType, primes).  Raises InconsistentSamples if the samples
    disagree and NoUsablePrime if too few primes are found below ``bound``.
    """
    count = count or ext.samples
    found = []
    for p in primerange(3, bound):
        if not classify_prime(ext, p).good:
            continue
        spec = _sample_specialization(ext, point, p)
        if spec is None:
            continue
        try:
            st = local_splitting(spec[1], p)
        except (IrregularCase, WildCase, DegenerateInput):
            continue
        found.append((p, st.inertia_cycle_type()))
        if len(found) >= count:
            break
    if len(found) < count:
        raise NoUsablePrime(f"only {len(found)} usable primes below {bound} for {point_label(point)}")
    types = {ct for _, ct in found}
    if len(types) > 1:
        detail = ", ".join(f"{p}: {ct}" for p, ct in found)
        raise InconsistentSamples(f"sampled inertia at {point_label(point)} disagrees ({detail})")
    return found[0][1], tuple(p for p, _ in found)


def inertia_cycle_type(ext, point, method="auto"):
    """(CycleType, Provenance) of the inertia at a candidate or branch point.

    ``method`` is one of ``auto`` (declared, else exact when rational, else
    sampling), ``exact``, ``sample``.
    """
    if isinstance(point, BranchPoint):
        point = point.point
    idx = _candidate_index(ext, point)
    declared = ext.declared_inertia.get(idx) if idx else None
    if method == "auto" and declared is not None:
        if declared.n != ext.n:
            raise DomainError(f"declared inertia {declared} does not partition {ext.n}")
        if ext.trust_declared:
            return declared, Provenance("declared")
        ct, primes = sampled_inertia(ext, point)
        if ct != declared:
            raise InconsistentSamples(
                f"declared inertia {declared} at {point_label(point)} contradicts sampled {ct}")
        return declared, Provenance("declared", primes)
    if method in ("auto", "exact"):
        try:
            return exact_inertia(ext, point), Provenance("exact_newton")
        except _ExactUnavailable:
            if method == "exact":
                raise DomainError(f"exact Newton analysis unavailable at {point_label(point)}")
    if method not in ("auto", "exact", "sample"):
        raise DomainError(f"unknown inertia method {method!r}")
    ct, primes = sampled_inertia(ext, point)
    return ct, Provenance("sampled_primes", primes)


def _candidate_index(ext, point):
    for i, c in enumerate(ext.candidates, start=1):
        if c is point or (c is not INFINITY and point is not INFINITY and c == point):
            return i
    return None


def _compute_branch_points(ext):
    out = []
    for point in ext.candidates:
        ct, prov = inertia_cycle_type(ext, point)
        if not ct.is_trivial():
            out.append(BranchPoint(point, ct, prov))
    return out


def branch_points(ext):
    return list(ext.branch_points)


def power_cycle_type(c, a):
    """Cycle type of g^a for g of type c: a cycle of length L splits into gcd(L, a) cycles."""
    return c.power(a)


def can_ramify(ext, p):
    """Branch points b with p a prime divisor of m_b * m_{1/b}."""
    out = []
    for bp in ext.branch_points:
        if bp.is_infinity:
            out.append(bp)
            continue
        if prime_divisor_witness(bp.minpoly, p) is not None:
            out.append(bp)
            continue
        r = bp.reciprocal
        if r.degree >= 1 and prime_divisor_witness(r, p) is not None:
            out.append(bp)
    return out


def check_irreducible(ext, trials=30):
    """Certify P irreducible over Q(T) by finding an irreducible specialization."""
    for t in range(trials):
        f = ext.P.specialize(t)
        if discriminant(f) != 0 and len(factor_over_z(f)) == 1:
            return t
    return None


def analyze(ext):
    """Summary used by the CLI ``analyze`` command."""
    bps = ext.branch_points
    return {
        "input": ext.to_json(),
        "degree": str(ext.n),
        "discriminant": str(ext.disc),
        "candidates": [point_label(c) for c in ext.candidates],
        "branch_points": [bp.to_json() for bp in bps],
        "bad_primes": [c.to_json() for c in bad_primes(ext)],
        "irreducible_witness": _opt_str(check_irreducible(ext)),
    }


def _opt_str(x):
    return None if x is None else str(x)
