"""Independent verification of a specialization point against a plan.

Every check is recomputed from P and t0 alone; the plan only supplies the
claims.  Failures are recorded in the certificate rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import factorint, isprime, primerange

from .algebra import discriminant, height, valuation
from .errors import DegenerateInput, IrregularCase, WildCase
from .factor import factor_over_z
from .padic import CycleType, frobenius_cycle_type, local_splitting
from .planner import discriminant_bounds, intersection_multiplicity

TRIAL_LIMIT = 10**6


@dataclass(frozen=True)
class GaloisCertificate:
    group: str
    witnesses: dict

    def to_json(self):
        return {"group": self.group, "witnesses": {k: str(v) for k, v in sorted(self.witnesses.items())}}


def _transposition(n):
    return CycleType([2] + [1] * (n - 2))


def _powers(c):
    return {c.power(a) for a in range(1, c.order + 1)}


def _prime_cycle(c, n, low, high):
    """A prime l with low < l <= high such that some power of c is an l-cycle."""
    for q in _powers(c):
        big = [x for x in q.parts if x > 1]
        if len(big) == 1 and isprime(big[0]) and low < big[0] <= high:
            return big[0]
    return None


def certify_galois(f, bound=100):
    """S_n or A_n certificate for an irreducible monic integer polynomial, or None.

    S_n: a Frobenius power that is a transposition plus, for n > 3, one that is
    an l-cycle with l prime and l > n/2.  A_n: square discriminant and an
    l-cycle with n/2 < l <= n - 3 (Jordan), or n = 3.
    """
    n = f.degree
    if n < 2 or len(factor_over_z(f)) != 1:
        return None
    d = discriminant(f)
    square = d > 0 and math.isqrt(d.numerator) ** 2 == d.numerator and d.denominator == 1
    if n == 2:
        return None if square else GaloisCertificate("S2", {"irreducible": 0})
    if square:
        if n == 3:
            return GaloisCertificate("A3", {"irreducible": 0})
        for p in primerange(3, bound):
            if d.numerator % p == 0:
                continue
            ell = _prime_cycle(frobenius_cycle_type(f, p), n, n / 2, n - 3)
            if ell:
                return GaloisCertificate(f"A{n}", {"prime_cycle": p})
        return None
    wit = {}
    tr = _transposition(n)
    for p in primerange(3, bound):
        if d.numerator % p == 0:
            continue
        c = frobenius_cycle_type(f, p)
        if "transposition" not in wit and tr in _powers(c):
            wit["transposition"] = p
        if n > 3 and "prime_cycle" not in wit and _prime_cycle(c, n, n / 2, n):
            wit["prime_cycle"] = p
        if "transposition" in wit and (n <= 3 or "prime_cycle" in wit):
            return GaloisCertificate(f"S{n}", wit)
    return None


def certify_galois_sn(ext, t0, bound=100):
    f = ext.P.specialize(t0)
    return certify_galois(f, bound)


@dataclass(frozen=True)
class RamificationReport:
    ramified: dict
    unramified: dict
    undecided: tuple
    unfactored: tuple

    def to_json(self):
        return {
            "ramified": {str(p): str(s) for p, s in sorted(self.ramified.items())},
            "unramified": {str(p): str(s) for p, s in sorted(self.unramified.items())},
            "undecided": [str(p) for p in self.undecided],
            "unfactored": [str(x) for x in self.unfactored],
        }


def _prime_divisors(n):
    """(primes, unfactored cofactors) of |n| by trial division and primality tests."""
    fac = factorint(abs(n), limit=TRIAL_LIMIT)
    primes, rest = [], []
    for q in fac:
        if isprime(q):
            primes.append(q)
        else:
            rest.append(q)
    return sorted(primes), sorted(rest)


def ramified_primes(ext, t0, primes=None):
    """Ramification among prime divisors of Delta_P(t0), decided by local splitting.

    p = 2 and primes where the splitting is wild or irregular are Undecided.
    """
    f = ext.P.specialize(t0)
    d = discriminant(f)
    if d == 0:
        raise DegenerateInput(f"Delta_P({t0}) = 0")
    divs, unfactored = _prime_divisors(d.numerator)
    if primes is not None:
        divs = [p for p in divs if p in set(primes)]
    ram, unram, und = {}, {}, []
    for p in divs:
        if p == 2:
            und.append(p)
            continue
        try:
            st = local_splitting(f, p)
        except (IrregularCase, WildCase):
            und.append(p)
            continue
        (unram if st.is_unramified() else ram)[p] = st
    return RamificationReport(ram, unram, tuple(und), tuple(unfactored))


def check_bound_chain(ext, t0, plan, report=None):
    """lower <= |d| <= |Delta_P(t0)| <= (1+delta) H |t0|^delta <= upper.

    |d| is bracketed: below by the tame exponents of the decided ramified
    primes, above by |Delta_P(t0)|.  The last inequality is only claimed when
    1 <= |t0| <= (1+delta) M.
    """
    report = report or ramified_primes(ext, t0)
    disc_t0 = ext.disc(t0).numerator
    delta = ext.delta
    H = height(ext.disc)
    lower, upper = discriminant_bounds(ext, plan)
    d_lower = math.prod(p ** s.disc_exponent() for p, s in report.ramified.items())
    hb = (1 + delta) * H * abs(t0) ** delta
    return {
        "delta_at_t0": str(disc_t0),
        "lower": str(lower),
        "d_lower": str(d_lower),
        "height_bound": str(hb),
        "upper": str(upper),
        "bound_t0": str((1 + delta) * plan.beta * _core(plan)),
        "ramified_divides_delta": disc_t0 % math.prod(report.ramified) == 0,
        "d_lower_divides_delta": disc_t0 % d_lower == 0,
        "lower_le_d": lower <= d_lower,
        "d_le_delta": d_lower <= abs(disc_t0),
        "delta_le_height": abs(disc_t0) <= hb,
        "t0_in_range": 1 <= abs(t0) <= (1 + delta) * plan.beta * _core(plan),
        "height_le_upper": hb <= upper,
    }


def _core(plan):
    return math.prod(c.p for c in plan.unramified) * math.prod(c.p ** (c.a + 1) for c in plan.ramified)


def _bound_pass(b):
    base = all(b[k] for k in ("ramified_divides_delta", "d_lower_divides_delta",
                              "lower_le_d", "d_le_delta", "delta_le_height"))
    return base and (not b["t0_in_range"] or b["height_le_upper"])


@dataclass
class SpecializationCertificate:
    t0: int
    poly: str
    in_progression: bool
    separable: bool
    irreducible: bool
    unramified: list = field(default_factory=list)
    ramified: list = field(default_factory=list)
    captures: list = field(default_factory=list)
    galois: object = None
    galois_expected: str = None
    bound_chain: dict = None
    ramification: object = None

    @property
    def all_pass(self):
        return recompute_flags(self.to_json(with_flag=False))

    def to_json(self, with_flag=True):
        d = {
            "t0": str(self.t0),
            "specialized_poly": self.poly,
            "in_progression": self.in_progression,
            "separable": self.separable,
            "irreducible": self.irreducible,
            "unramified": self.unramified,
            "ramified": self.ramified,
            "captures": self.captures,
            "galois": self.galois.to_json() if self.galois else None,
            "galois_expected": self.galois_expected,
            "bound_chain": self.bound_chain,
            "ramification": self.ramification.to_json() if self.ramification else None,
        }
        if with_flag:
            d["all_pass"] = recompute_flags(d)
        return d


def _frob_record(f, p, target, kind):
    rec = {"p": str(p), "kind": kind, "predicted": str(target)}
    v = valuation(discriminant(f), p)
    rec["disc_valuation"] = str(v)
    rec["observed"] = str(frobenius_cycle_type(f, p)) if v == 0 else None
    rec["pass"] = rec["observed"] == str(target)
    return rec


def _ram_record(ext, f, t0, cond):
    bp = ext.branch_points[cond.branch - 1]
    rec = {
        "p": str(cond.p),
        "branch": bp.label,
        "a": str(cond.a),
        "inertia": str(bp.inertia),
        "provenance": bp.provenance.to_json(),
        "predicted": str(cond.expected),
        "condition_2": "partial (lcm-order surrogate)",
    }
    rec["intersection"] = str(intersection_multiplicity(t0, bp, cond.p))
    try:
        st = local_splitting(f, cond.p)
        rec["observed"] = str(st)
        rec["observed_e"] = sorted(st.e_set())
    except (IrregularCase, WildCase) as exc:
        rec["observed"] = None
        rec["observed_e"] = None
        rec["undecided"] = exc.code
    rec["pass"] = _ram_pass(rec)
    return rec


def _ram_pass(rec):
    if rec["observed_e"] is None:
        return False
    pred = CycleType.parse(rec["predicted"])
    es = rec["observed_e"]
    return (int(rec["intersection"]) == int(rec["a"])
            and set(es) == set(pred.parts)
            and math.lcm(*es) == pred.order)


def recompute_flags(d):
    """Overall verdict recomputed from the raw data recorded in a certificate."""
    ok = d["in_progression"] and d["separable"] and d["irreducible"]
    for rec in d["unramified"] + d["captures"]:
        ok = ok and rec["disc_valuation"] == "0" and rec["observed"] == rec["predicted"]
    for rec in d["ramified"]:
        ok = ok and _ram_pass(rec)
    if d["galois_expected"]:
        ok = ok and d["galois"] is not None and d["galois"]["group"] == d["galois_expected"]
    b = d["bound_chain"]
    ok = ok and b is not None and _bound_pass(b)
    return bool(ok)


def verify_specialization(ext, t0, plan, galois_bound=100):
    """Full certificate for the specialization at t0 against ``plan``."""
    t0 = int(t0)
    f = ext.P.specialize(t0)
    if discriminant(f) == 0:
        raise DegenerateInput(f"P({t0}, Y) is not separable")
    irreducible = len(factor_over_z(f)) == 1
    cert = SpecializationCertificate(t0, str(f), plan.contains(t0), True, irreducible)
    cert.unramified = [_frob_record(f, c.p, c.target, "unramified") for c in plan.unramified]
    cert.captures = [_frob_record(f, p, ct, "capture") for p, ct in plan.captures]
    cert.ramified = [_ram_record(ext, f, t0, c) for c in plan.ramified]
    if ext.is_symmetric():
        cert.galois_expected = f"S{ext.n}"
    elif ext.is_alternating():
        cert.galois_expected = f"A{ext.n}"
    if irreducible and cert.galois_expected:
        cert.galois = certify_galois(f, galois_bound)
    report = ramified_primes(ext, t0)
    cert.ramification = report
    cert.bound_chain = check_bound_chain(ext, t0, plan, report)
    return cert
