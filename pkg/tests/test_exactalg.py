"""Sparse exact-rational polynomial arithmetic and the expression parser."""

from fractions import Fraction

import pytest

from qsing.exactalg import ParseError, Poly, parse_polynomial, render


V = ("x", "y")


def test_parse_simple_sum():
    p = parse_polynomial("x^3 + x*y^3", V)
    assert p.coeff((3, 0)) == 1
    assert p.coeff((1, 3)) == 1
    assert p.total_degree() == 4


def test_parse_rational_coefficients():
    p = parse_polynomial("2/3*x^2 - y", V)
    assert p.coeff((2, 0)) == Fraction(2, 3)
    assert p.coeff((0, 1)) == -1


def test_parse_infers_variables():
    p = parse_polynomial("a^2 + b")
    assert p.vars == ("a", "b")


def test_parse_error_position():
    with pytest.raises(ParseError):
        parse_polynomial("x^", ("x",))


def test_arithmetic_ring_axioms():
    p = parse_polynomial("x + y", V)
    q = parse_polynomial("x - y", V)
    assert p * q == parse_polynomial("x^2 - y^2", V)
    assert p + q == parse_polynomial("2*x", V)
    assert (p - p).is_zero()
    assert p ** 3 == p * p * p


def test_scalar_multiplication():
    p = parse_polynomial("x^2", V)
    assert Fraction(1, 2) * p == p * Fraction(1, 2)
    assert (2 * p).coeff((2, 0)) == 2


def test_derivative():
    p = parse_polynomial("x^3 + x*y^2", V)
    assert p.derivative("x") == parse_polynomial("3*x^2 + y^2", V)
    assert p.derivative("y") == parse_polynomial("2*x*y", V)


def test_weighted_degree():
    p = parse_polynomial("x^3", V)
    assert p.weighted_degree((Fraction(1, 3), Fraction(2, 9))) == 1


def test_substitute_zero():
    p = parse_polynomial("x^3 + x*y^2 + y", V)
    assert p.substitute_zero(["y"]) == Poly.monomial(("x",), (3,))


def test_render_round_trip():
    for text in ("x^3 + x*y^3", "2/3*x^2 - y + 1", "x*y"):
        p = parse_polynomial(text, V)
        assert parse_polynomial(render(p), p.vars) == p


def test_evaluate():
    p = parse_polynomial("x^2 + y", V)
    val = p.evaluate({"x": Fraction(1, 2), "y": Fraction(3)})
    assert val == Fraction(13, 4)
