import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from specforge.algebra import (
    INFINITY,
    BiPoly,
    UniPoly,
    discriminant,
    disc_y,
    height,
    integral_monic,
    reciprocal_minpoly,
    resultant,
    taylor_shift,
    valuation,
)
from specforge.errors import DomainError
from specforge.factor import is_irreducible_over_q

from conftest import SY, ST, T, Y, bi_to_sympy, to_sympy, upoly

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**12)
small_polys = st.lists(st.integers(-30, 30), min_size=1, max_size=6).map(lambda cs: UniPoly(cs, "Y"))


def test_valuation_examples():
    assert valuation(0, 7) == math.inf
    assert valuation(6, 3) == 1
    assert valuation(Fraction(671, 27), 11) == 1
    assert valuation(Fraction(5, 27), 3) == -3


def test_valuation_rejects_composite():
    with pytest.raises(DomainError):
        valuation(5, 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
@settings(max_examples=1000, deadline=None)
@given(a=rationals, b=rationals)
def test_valuation_is_a_valuation(p, a, b):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)
    va, vb = valuation(a, p), valuation(b, p)
    assert valuation(a + b, p) >= min(va, vb)
    if va != vb:
        assert valuation(a + b, p) == min(va, vb)


def test_disc_y_examples():
    assert disc_y(Y**3 - Y - T) == UniPoly([4, 0, -27])
    assert disc_y(Y**2 - T) == UniPoly([0, 4])
    assert disc_y(Y - T) == UniPoly([1])


def test_discriminant_sign_convention():
    # disc(Y^3 + aY + b) = -4a^3 - 27b^2
    assert discriminant(upoly(1, 0, 2, 3)) == -4 * 8 - 27 * 9


@settings(max_examples=60, deadline=None)
@given(f=small_polys)
def test_discriminant_matches_sympy(f):
    if f.degree < 1:
        return
    assert discriminant(f) == sympy.discriminant(to_sympy(f), SY)


@settings(max_examples=60, deadline=None)
@given(f=small_polys, g=small_polys)
def test_resultant_matches_sylvester(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_det(f, g)


def sylvester_det(f, g):
    # sympy.resultant disagrees with the Sylvester determinant in sign when deg f < deg g
    m, n = f.degree, g.degree
    fc = [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)]
    gc = [sympy.Rational(c.numerator, c.denominator) for c in reversed(g.coeffs)]
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows).det()


bipolys = st.builds(
    lambda n, cs: BiPoly({(0, n): 1, **{(i, j): c for (i, j), c in cs.items() if j < n}}),
    st.integers(1, 4),
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-9, 9), max_size=6),
)


@settings(max_examples=100, deadline=None)
@given(P=bipolys, t0=st.integers(-20, 20))
def test_disc_y_specializes(P, t0):
    assert disc_y(P)(t0) == discriminant(P.specialize(t0))


@settings(max_examples=30, deadline=None)
@given(P=bipolys)
def test_disc_y_matches_sympy(P):
    if P.deg_y < 2:
        return
    expected = sympy.Poly(sympy.discriminant(bi_to_sympy(P), SY), ST)
    got = disc_y(P)
    assert [sympy.Rational(c.numerator, c.denominator) for c in got.coeffs] == list(reversed(expected.all_coeffs())) or (
        got.is_zero() and expected.is_zero)


def test_taylor_shift_examples():
    assert taylor_shift(upoly(1, 0, -1, -5), -2) == upoly(1, -6, 11, -11)
    assert taylor_shift(upoly(1, 0, -1, -115), -2) == upoly(1, -6, 11, -121)
    f = upoly(3, 1, 4)
    assert taylor_shift(f, 0) == f


@settings(max_examples=100, deadline=None)
@given(f=small_polys, c=st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100))
def test_taylor_shift_roundtrip(f, c):
    g = taylor_shift(f, c)
    assert taylor_shift(g, -c) == f
    assert g(0) == f(c)


def test_reciprocal_minpoly_examples():
    assert reciprocal_minpoly(UniPoly([Fraction(-4, 27), 0, 1])) == UniPoly([Fraction(-27, 4), 0, 1])
    assert reciprocal_minpoly(INFINITY) == UniPoly([0, 1])
    assert reciprocal_minpoly(UniPoly([-2, 1])) == UniPoly([Fraction(-1, 2), 1])
    assert reciprocal_minpoly(UniPoly([0, 1])) == UniPoly([1])


def test_reciprocal_minpoly_errors():
    with pytest.raises(DomainError):
        reciprocal_minpoly(UniPoly([-1, 0, 1]))
    with pytest.raises(DomainError):
        reciprocal_minpoly(UniPoly([1, 2]))


@settings(max_examples=50, deadline=None)
@given(cs=st.lists(st.integers(-20, 20), min_size=2, max_size=4))
def test_reciprocal_involution(cs):
    m = UniPoly(cs + [1], "T")
    if m[0] == 0 or not is_irreducible_over_q(m):
        return
    assert reciprocal_minpoly(reciprocal_minpoly(m)) == m


def test_height():
    assert height(UniPoly([4, 0, -27])) == 27
    assert height(UniPoly([0, 1])) == 1
    assert height(UniPoly([])) == 0


def test_integral_monic():
    # Y^3 - Y - 1/11 becomes W^3 - 121W - 121 under Y = W/11
    g, D = integral_monic(UniPoly([-Fraction(1, 11), -1, 0, 1], "Y"))
    assert (g, D) == (upoly(1, 0, -121, -121), 11)


def test_unipoly_arithmetic():
    f = upoly(1, 0, -1, -5)
    q, r = divmod(f, upoly(1, -4))
    assert q * upoly(1, -4) + r == f
    assert str(UniPoly([Fraction(-4, 27), 0, 1])) == "T^2 - 4/27"
    assert str(UniPoly([4, 0, -27])) == "-27*T^2 + 4"


def test_bipoly_printing():
    assert str(Y**3 - Y - T) == "Y^3 - Y - T"
    assert (Y**3 - Y - T).specialize(5) == upoly(1, 0, -1, -5)
