"""Grammar conformance and print/parse round-trips."""

import random

import pytest

from conftest import random_laurent_poly, random_poly
from polyctrl.parser import ParseError, parse_polynomial
from polyctrl.poly import Polynomial, Ring


R2 = Ring(("x1", "x2"))
RXY = Ring(("x", "y"))
B = Ring(("s1", "s2"), laurent=True)


def test_expansion_example():
    p = parse_polynomial("x1^2 - 2*x1*x2 + 1", R2)
    assert p.num_terms() == 3
    assert p.total_degree() == 2


def test_difference_of_squares():
    x, y = RXY.gens()
    assert parse_polynomial("(x+y)*(x-y)", RXY) == x ** 2 - y ** 2


def test_laurent_literal():
    p = parse_polynomial("s1^-1 - 1", B)
    assert dict(p.terms) == {(-1, 0): 1, (0, 0): -1}


def test_rationals_and_signs():
    x, _ = RXY.gens()
    assert parse_polynomial("1/2*x", RXY) == x * parse_polynomial("1/2", RXY).constant_value()
    assert parse_polynomial("-x + 1", RXY) == 1 - x
    assert parse_polynomial("2^-1", RXY).constant_value() == parse_polynomial("1/2", RXY).constant_value()
    assert parse_polynomial("x^0", RXY) == RXY.one()
    assert parse_polynomial("  x +\t y ", RXY) == parse_polynomial("x+y", RXY)


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError) as err:
        parse_polynomial("2x", RXY)
    assert err.value.pos == 1


@pytest.mark.parametrize(
    "src",
    ["", "x +", "(x", "x ** 2", "x^", "*x", "x^(2)", "1/0"],
)
def test_syntax_errors(src):
    with pytest.raises(ParseError):
        parse_polynomial(src, RXY)


def test_unknown_variable_position():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + zz", RXY)
    assert err.value.pos == 4


def test_negative_exponent_needs_laurent():
    with pytest.raises(ParseError):
        parse_polynomial("x^-1", RXY)
    with pytest.raises(ParseError):
        parse_polynomial("(x+y)^-1", B.polynomial_ring())
    s1 = B.variable(0)
    assert parse_polynomial("s1^-2", B) == s1.unit_inverse(2)


def test_unexpected_character():
    with pytest.raises(ParseError):
        parse_polynomial("x + $", RXY)


def test_roundtrip_random():
    rng = random.Random(4242)
    R3 = Ring(("x", "y", "z"))
    for _ in range(300):
        p = random_poly(R3, rng, 3, density=0.4, bound=9)
        assert parse_polynomial(str(p), R3) == p


def test_roundtrip_rational_coefficients():
    rng = random.Random(777)
    from fractions import Fraction

    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(0, 5)):
            mono = (rng.randint(0, 3), rng.randint(0, 3))
            terms[mono] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        p = Polynomial(RXY, terms)
        assert parse_polynomial(str(p), RXY) == p


def test_roundtrip_laurent():
    rng = random.Random(31337)
    for _ in range(200):
        p = random_laurent_poly(B, rng, span=2, max_terms=4)
        assert parse_polynomial(str(p), B) == p


def test_zero_roundtrip():
    assert str(RXY.zero()) == "0"
    assert parse_polynomial("0", RXY).is_zero()
