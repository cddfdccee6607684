import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from specforge.algebra import UniPoly
from specforge.padic import CycleType, frobenius_cycle_type
from specforge.planner import NONE, RELAXED, STRICT, Ramified, Unramified, build_plan, search_t0
from specforge.verify import (
    certify_galois,
    certify_galois_sn,
    check_bound_chain,
    ramified_primes,
    recompute_flags,
    verify_specialization,
)

from conftest import upoly


def C(s):
    return CycleType.parse(s)


@pytest.fixture(scope="module")
def flagship(cubic):
    return build_plan(cubic, [Unramified(7, C("3"))], [Ramified(11, 1, 1)], RELAXED)


def test_flagship_certificate(cubic, flagship):
    cert = verify_specialization(cubic, 7023, flagship)
    d = cert.to_json()
    assert d["all_pass"] and d["irreducible"]
    assert d["unramified"][0]["observed"] == "3"
    assert d["captures"][0]["observed"] == "2-1"
    assert d["ramified"][0]["observed"] == "{(1,1), (2,1)}"
    assert d["ramified"][0]["observed_e"] == [1, 2]
    assert d["galois"]["group"] == "S3"


def test_multiplicity_two_is_unramified(cubic):
    plan = build_plan(cubic, [], [Ramified(11, 1, 2)], NONE)
    assert (plan.theta, plan.modulus) == (115, 1331)
    d = verify_specialization(cubic, 115, plan).to_json()
    assert d["all_pass"]
    assert d["ramified"][0]["observed"] == "{(1,1), (1,2)}"
    assert d["ramified"][0]["predicted"] == "1-1-1"


def test_failures_are_recorded(cubic, flagship):
    plan = build_plan(cubic, [], [Ramified(11, 1, 1)], NONE)
    d = verify_specialization(cubic, 0, plan).to_json()
    assert not d["all_pass"]
    assert d["ramified"][0]["intersection"] == "0"
    assert not d["in_progression"]
    assert not verify_specialization(cubic, 7024, flagship).all_pass


def test_certify_galois_examples(cubic):
    assert certify_galois_sn(cubic, 5).group == "S3"
    c = certify_galois_sn(cubic, 7023)
    assert c.group == "S3"
    assert frobenius_cycle_type(upoly(1, 0, -1, -7023), 7) == C("3")
    assert frobenius_cycle_type(upoly(1, 0, -1, -7023), 13) == C("2-1")
    assert certify_galois(upoly(1, 0, -2), 50).group == "S2"
    assert certify_galois(upoly(1, 0, -3, 1)).group == "A3"  # disc 81
    assert certify_galois(upoly(1, 0, -1)) is None  # reducible
    assert certify_galois(upoly(1, 0, 0, -1, -1)).group == "S4"
    assert certify_galois(upoly(1, 0, 0, 0, -1, -1)).group == "S5"


def test_certify_galois_against_sympy():
    from sympy import Poly, Symbol
    from sympy.polys.numberfields.galoisgroups import galois_group

    x = Symbol("x")
    for cs in ([1, 0, 0, -1, -1], [1, 0, 0, 0, 2], [1, 0, 1, 0, 1], [1, 0, -4, 0, 2], [1, 1, 1, 1, 1], [1, 0, 0, 3, -3]):
        f = UniPoly(list(reversed(cs)), "Y")
        if not Poly(cs, x).is_irreducible:
            assert certify_galois(f) is None
            continue
        g, _ = galois_group(Poly(cs, x), by_name=True)
        cert = certify_galois(f, 200)
        name = g.name
        if cert is not None:
            assert (cert.group == "S4") == (name == "S4")
        if name == "S4":
            assert cert is not None


def test_ramified_primes_examples(cubic, sqrt_cover):
    r = ramified_primes(cubic, 5)
    assert set(r.ramified) == {11, 61}
    assert str(r.ramified[61]) == "{(1,1), (2,1)}"
    r = ramified_primes(cubic, 115)
    assert 11 not in r.ramified and 11 in r.unramified
    assert set(r.ramified) == {13, 227}  # 2951 = 13 * 227
    r = ramified_primes(sqrt_cover, 1)
    assert r.ramified == {} and r.undecided == (2,)


def test_bound_chain_examples(cubic, flagship):
    plan = build_plan(cubic, [], [Ramified(11, 1, 1)], NONE)
    b = check_bound_chain(cubic, 5, plan)
    assert (b["lower"], b["delta_at_t0"], b["height_bound"]) == ("11", "-671", "2025")
    assert b["lower_le_d"] and b["delta_le_height"] and b["height_le_upper"]
    b = check_bound_chain(cubic, 7023, flagship)
    assert int(b["delta_at_t0"]) % 11 == 0
    assert abs(int(b["delta_at_t0"])) == 27 * 7023**2 - 4
    assert int(b["height_bound"]) == 3 * 27 * 7023**2 <= int(b["upper"])
    empty = build_plan(cubic, [], [], NONE)
    b = check_bound_chain(cubic, 1, empty)
    assert b["lower"] == "1" and b["delta_at_t0"] == "-23"


def test_certificate_roundtrip(cubic, flagship):
    d = verify_specialization(cubic, 7023, flagship).to_json()
    again = json.loads(json.dumps(d))
    assert recompute_flags(again) == again["all_pass"]
    again["unramified"][0]["observed"] = "1-1-1"
    assert not recompute_flags(again)


def _fixture_plans(cubic, quartic):
    yield cubic, build_plan(cubic, [Unramified(7, C("3"))], [Ramified(11, 1, 1)], RELAXED)
    yield cubic, build_plan(cubic, [], [Ramified(13, 1, 2), Ramified(23, 1, 1)], RELAXED)
    yield cubic, build_plan(cubic, [Unramified(5, C("1-1-1"))], [], STRICT)
    yield quartic, build_plan(quartic, [Unramified(7, C("4"))], [], RELAXED)


def test_end_to_end_plans(cubic, quartic):
    for ext, plan in _fixture_plans(cubic, quartic):
        for t0 in search_t0(ext, plan, 5):
            assert verify_specialization(ext, t0, plan).all_pass, (plan, t0)


def test_sit_cross_validation_small(cubic):
    from specforge.cover import classify_prime, exact_multiplicity_residue
    from specforge.padic import local_splitting

    m = cubic.branch_points[0].point
    for p in (11, 13, 23, 37, 47):
        assert classify_prime(cubic, p).good
        t1 = exact_multiplicity_residue(m, p, 1)
        assert local_splitting(cubic.P.specialize(t1), p).e_set() == {1, 2}
        t2 = exact_multiplicity_residue(m, p, 2)
        assert local_splitting(cubic.P.specialize(t2), p).is_unramified()


def test_chebotarev_statistics():
    counts = Counter()
    for t0 in range(1, 2001):
        f = upoly(1, 0, -1, -t0)
        if (4 - 27 * t0 * t0) % 7 == 0:
            continue
        counts[str(frobenius_cycle_type(f, 7))] += 1
    total = sum(counts.values())
    for key, expected in (("1-1-1", 1 / 6), ("2-1", 1 / 2), ("3", 1 / 3)):
        assert abs(counts[key] / total - expected) <= 0.1


@settings(max_examples=30, deadline=None)
@given(u=st.integers(0, 10**6))
def test_progression_members_certify(cubic, flagship, u):
    t0 = flagship.theta + u * flagship.modulus
    assert verify_specialization(cubic, t0, flagship).all_pass
