import sympy
import pytest

from specforge.algebra import BiPoly, UniPoly
from specforge.cover import ExtensionPresentation, trinomial

T, Y = BiPoly.T(), BiPoly.Y()
SY = sympy.Symbol("Y")
ST = sympy.Symbol("T")


def upoly(*coeffs, var="Y"):
    """UniPoly from coefficients given high degree first."""
    return UniPoly(list(reversed(coeffs)), var)


def to_sympy(f, sym=SY):
    return sum(sympy.Rational(c.numerator, c.denominator) * sym**i for i, c in enumerate(f.coeffs))


def bi_to_sympy(P):
    return sum(c * ST**i * SY**j for (i, j), c in P.terms.items())


@pytest.fixture(scope="session")
def cubic():
    return ExtensionPresentation(Y**3 - Y - T)


@pytest.fixture(scope="session")
def quartic():
    return ExtensionPresentation(Y**4 - Y - T)


@pytest.fixture(scope="session")
def tri():
    return ExtensionPresentation(trinomial(3, 1, 2, 1))


@pytest.fixture(scope="session")
def sqrt_cover():
    return ExtensionPresentation(Y**2 - T)
