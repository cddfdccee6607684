"""Arithmetic progressions of specialization points with prescribed local behaviour.

A plan is a residue theta and modulus M such that every integer t0 = theta mod M
(with P(t0, Y) separable) is predicted to give a degree-n field that is
unramified with a given Frobenius type at the primes of S_ur, ramified like a
power of a branch-point inertia at the primes of S_ra, and whose Galois group is
forced by capture primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import nextprime
from sympy.ntheory.modular import crt

from .algebra import INFINITY, UniPoly, height, reciprocal_minpoly, valuation
from .cover import (
    classify_prime,
    can_ramify,
    exact_multiplicity_residue,
    point_label,
    power_cycle_type,
)
from .errors import BadPrimeForBranch, CRTConflict, DomainError, NotFound
from .factor import factor_degrees_mod_p, is_squarefree_mod_p
from .padic import CycleType

STRICT = "strict"
RELAXED = "relaxed"
NONE = "none"
MODES = (STRICT, RELAXED, NONE)

CAPTURE_SEARCH_LIMIT = 20000


@dataclass(frozen=True)
class Unramified:
    p: int
    target: CycleType

    def to_json(self):
        return {"kind": "unramified", "p": str(self.p), "target": str(self.target)}


@dataclass(frozen=True)
class Ramified:
    """Ramification at p through branch point ``branch`` (1-based) with multiplicity a."""

    p: int
    branch: int
    a: int
    expected: CycleType = None

    def to_json(self):
        return {"kind": "ramified", "p": str(self.p), "branch": str(self.branch),
                "a": str(self.a), "expected": str(self.expected)}


@dataclass(frozen=True)
class LedgerEntry:
    p: int
    residue: int
    exponent: int
    purpose: str

    @property
    def modulus(self):
        return self.p**self.exponent

    def to_json(self):
        return {"p": str(self.p), "residue": str(self.residue),
                "exponent": str(self.exponent), "purpose": self.purpose}


@dataclass(frozen=True)
class SpecializationPlan:
    theta: int
    modulus: int
    ledger: tuple
    unramified: tuple = ()
    ramified: tuple = ()
    captures: tuple = ()
    mode: str = RELAXED

    @property
    def beta(self):
        return math.prod(p for p, _ in self.captures)

    def contains(self, t0):
        return (t0 - self.theta) % self.modulus == 0

    def progression(self, start=0):
        u = start
        while True:
            yield self.theta + u * self.modulus
            u += 1

    def to_json(self):
        return {
            "theta": str(self.theta),
            "modulus": str(self.modulus),
            "mode": self.mode,
            "ledger": [e.to_json() for e in self.ledger],
            "unramified": [c.to_json() for c in self.unramified],
            "ramified": [c.to_json() for c in self.ramified],
            "captures": [{"p": str(p), "type": str(ct)} for p, ct in self.captures],
        }

    @classmethod
    def from_json(cls, d):
        unr = tuple(Unramified(int(c["p"]), CycleType.parse(c["target"])) for c in d["unramified"])
        ram = tuple(Ramified(int(c["p"]), int(c["branch"]), int(c["a"]), CycleType.parse(c["expected"]))
                    for c in d["ramified"])
        ledger = tuple(LedgerEntry(int(e["p"]), int(e["residue"]), int(e["exponent"]), e["purpose"])
                       for e in d["ledger"])
        caps = tuple((int(c["p"]), CycleType.parse(c["type"])) for c in d["captures"])
        return cls(int(d["theta"]), int(d["modulus"]), ledger, unr, ram, caps, d.get("mode", RELAXED))


# -- intersection multiplicity and theta ---------------------------------------


def _unitizes(m, r, p):
    return all(valuation(c, p) >= 0 for g in (m, r) for c in g.coeffs if c)


def intersection_multiplicity(t0, point, p):
    """I_p(t0, b): v_p(m_b(t0)) for p-integral t0, else v_p(m_{1/b}(1/t0))."""
    if hasattr(point, "point"):
        point = point.point
    t0 = Fraction(t0)
    m = UniPoly.const(1) if point is INFINITY else point
    r = reciprocal_minpoly(point)
    if not _unitizes(m, r, p):
        raise BadPrimeForBranch(f"{p} does not unitize {point_label(point)}")
    if t0 != 0 and m(t0) == 0:
        raise DomainError(f"{t0} is a root of {m}")
    if t0 == 0 or valuation(t0, p) >= 0:
        v = valuation(m(t0), p)
        if t0 != 0 and valuation(t0, p) == 0:
            assert v == valuation(r(1 / t0), p)
        return v
    return valuation(r(1 / t0), p)


def construct_theta(conditions):
    """(theta, modulus) with I_p(theta + u*modulus, m) = a for every integer u.

    ``conditions`` is a list of (p, m, a) with m a finite branch polynomial.
    """
    residues, moduli = [], []
    for p, m, a in conditions:
        if m is INFINITY or getattr(m, "is_infinity", False):
            raise DomainError("ramified conditions at infinity are planned in the reciprocal coordinate")
        if hasattr(m, "point"):
            m = m.point
        residues.append(exact_multiplicity_residue(m, p, a))
        moduli.append(p ** (a + 1))
    return _crt(residues, moduli)


def _crt(residues, moduli):
    if not moduli:
        return 0, 1
    if len(set(moduli)) != len(moduli) or math.prod(moduli) != math.lcm(*moduli):
        raise CRTConflict("moduli are not pairwise coprime")
    x, M = crt(moduli, residues)
    return int(x), int(M)


# -- residue searches -----------------------------------------------------------


def unramified_residue_search(ext, p, target):
    """Smallest r in [0, p) with P(r, Y) squarefree mod p of factor type ``target``."""
    want = sorted(target.parts)
    for r in range(p):
        f = ext.P.specialize(r)
        ints = [c.numerator % p for c in f.coeffs]
        if not is_squarefree_mod_p(ints, p):
            continue
        if factor_degrees_mod_p(f, p) == want:
            return r
    raise NotFound(f"no residue mod {p} realizes type {target}")


def _partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def group_cycle_types(ext):
    """Nontrivial cycle types of the geometric group, descending (S_n and A_n only)."""
    n = ext.n
    types = [CycleType(p) for p in _partitions(n) if any(x > 1 for x in p)]
    if ext.is_symmetric():
        return types
    if ext.is_alternating():
        return [c for c in types if sum(x - 1 for x in c.parts) % 2 == 0]
    raise DomainError("cycle-type capture needs the geometric group to be S_n or A_n")


def strict_capture_bound(ext):
    return ext.branch_count**2 * ext.group_order**2


def capture_conditions(ext, forbidden, mode=RELAXED, unramified=(), ramified=()):
    """Primes and residues forcing the Galois group through Frobenius types.

    Relaxed mode counts the types of the unramified conditions (and, for n = 2,
    any nontrivial ramified power type) as already captured.  Capture primes are
    the smallest good primes above every forbidden prime, and at least
    r^2 |G|^2 in strict mode.
    """
    if mode == NONE:
        return []
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    needed = group_cycle_types(ext)
    if mode == RELAXED:
        have = {c.target for c in unramified}
        if ext.n == 2:
            have |= {c.expected for c in ramified if c.expected and not c.expected.is_trivial()}
        needed = [t for t in needed if t not in have]
    start = max(forbidden, default=1)
    if mode == STRICT:
        start = max(start, strict_capture_bound(ext) - 1)
    out = []
    p = start
    for target in needed:
        while True:
            p = nextprime(p)
            if p > CAPTURE_SEARCH_LIMIT:
                raise NotFound(f"no capture prime for type {target} below {CAPTURE_SEARCH_LIMIT}")
            if not classify_prime(ext, p).good:
                continue
            try:
                r = unramified_residue_search(ext, p, target)
            except NotFound:
                continue
            out.append((p, r, target))
            break
    return out


# -- plans ----------------------------------------------------------------------


def make_ramified(ext, p, branch, a):
    bps = ext.branch_points
    if not 1 <= branch <= len(bps):
        raise DomainError(f"branch index {branch} out of range 1..{len(bps)}")
    return Ramified(p, branch, a, power_cycle_type(bps[branch - 1].inertia, a))


def _check_conditions(ext, S_ur, S_ra):
    primes = [c.p for c in S_ur] + [c.p for c in S_ra]
    if len(set(primes)) != len(primes):
        raise DomainError("condition primes must be pairwise distinct")
    for p in primes:
        cl = classify_prime(ext, p)
        if not cl.good:
            raise BadPrimeForBranch(f"{p} is a bad prime ({', '.join(cl.reasons)})")
    for c in S_ur:
        if c.target.n != ext.n:
            raise DomainError(f"type {c.target} does not partition {ext.n}")
    for c in S_ra:
        if c.a < 1:
            raise DomainError("ramification exponent must be >= 1")
        bp = ext.branch_points[c.branch - 1]
        if bp.is_infinity:
            raise DomainError("integer progressions need a finite branch point")
        if bp not in can_ramify(ext, c.p):
            raise BadPrimeForBranch(f"{c.p} is not a prime divisor of the branch {bp.label}")


def build_plan(ext, S_ur=(), S_ra=(), mode=RELAXED):
    """Assemble theta mod M from per-prime congruences by CRT; 1 <= theta <= M."""
    S_ur = tuple(S_ur)
    S_ra = tuple(make_ramified(ext, c.p, c.branch, c.a) if c.expected is None else c for c in S_ra)
    _check_conditions(ext, S_ur, S_ra)
    ledger = []
    for c in S_ra:
        m = ext.branch_points[c.branch - 1].point
        r, _ = construct_theta([(c.p, m, c.a)])
        ledger.append(LedgerEntry(c.p, r, c.a + 1, f"ramified branch {c.branch} a={c.a}"))
    for c in S_ur:
        r = unramified_residue_search(ext, c.p, c.target)
        ledger.append(LedgerEntry(c.p, r, 1, f"unramified type {c.target}"))
    forbidden = [c.p for c in S_ur] + [c.p for c in S_ra]
    caps = capture_conditions(ext, forbidden, mode, S_ur, S_ra)
    for p, r, target in caps:
        ledger.append(LedgerEntry(p, r, 1, f"capture type {target}"))
    theta, M = _crt([e.residue for e in ledger], [e.modulus for e in ledger])
    theta = theta % M or M
    for e in ledger:
        assert theta % e.modulus == e.residue % e.modulus
    return SpecializationPlan(theta, M, tuple(ledger), S_ur, S_ra,
                              tuple((p, t) for p, _, t in caps), mode)


def integral_disc(ext):
    """Delta_P as an integer polynomial (P is monic with integer coefficients)."""
    d = ext.disc
    if not d.is_integral():
        raise DomainError("P must have integer coefficients")
    return d


def discriminant_bounds(ext, plan):
    """(lower, upper) for |d_{E_t0}|.

    upper = (1+delta)^(1+delta) H(Delta) beta^delta (prod_ur p prod_ra p^(a+1))^delta;
    lower is the product of the S_ra primes whose expected inertia power is
    nontrivial, each of which must ramify.
    """
    delta = ext.delta
    H = height(integral_disc(ext))
    core = math.prod(c.p for c in plan.unramified) * math.prod(c.p ** (c.a + 1) for c in plan.ramified)
    upper = (1 + delta) ** (1 + delta) * H * plan.beta**delta * core**delta
    lower = math.prod(c.p for c in plan.ramified if not c.expected.is_trivial())
    return lower, upper


def select_t0(ext, plan):
    """Smallest theta + u M, u in [0, delta], that is not a root of Delta_P."""
    disc = ext.disc
    for u in range(ext.delta + 1):
        t0 = plan.theta + u * plan.modulus
        if disc(t0) != 0:
            assert 1 <= abs(t0) <= (1 + ext.delta) * plan.modulus
            return t0
    raise AssertionError("Delta_P has more than delta_P roots")


def search_t0(ext, plan, count):
    """First ``count`` members of the progression that are not roots of Delta_P."""
    out = []
    for t0 in plan.progression():
        if ext.disc(t0) != 0:
            out.append(t0)
            if len(out) >= count:
                return out
