"""Expression parser grammar, precedence, and error reporting."""

import cmath
import math

import pytest

from fpjacobi.errors import EvaluationFailure, ParseError
from fpjacobi.exprparse import parse_complex_literal, parse_expression


def ev(src, x=0.0):
    return parse_expression(src).eval(complex(x))


def test_examples():
    assert ev("x^2+1", 2) == 5
    assert ev("exp(x)", 0) == 1
    assert ev("(1+2i)*x", 1) == 1 + 2j


def test_precedence():
    assert ev("2+3*4") == 14
    assert ev("2*3^2") == 18          # ^ over *
    assert ev("-x^2", 2) == -4        # ^ over unary minus
    assert ev("-2*x", 3) == -6        # unary minus over *
    assert ev("2-3-4") == -5          # left associative
    assert ev("8/4/2") == 1
    assert ev("x^2^3", 2) == 64       # left associative powers


def test_functions():
    for name, fn in [("exp", cmath.exp), ("sin", cmath.sin),
                     ("cos", cmath.cos), ("sinh", cmath.sinh),
                     ("cosh", cmath.cosh)]:
        assert ev(f"{name}(x)", 0.37) == pytest.approx(fn(0.37), rel=1e-15)


def test_complex_literals():
    assert parse_complex_literal("2") == 2
    assert parse_complex_literal("3.5i") == 3.5j
    assert parse_complex_literal("1+2i") == 1 + 2j
    assert parse_complex_literal("1.5-0.5i") == 1.5 - 0.5j
    assert parse_complex_literal("i") == 1j
    assert parse_complex_literal("-0.5") == -0.5
    assert parse_complex_literal("2e-3i") == 2e-3j


def test_complex_literal_rejects_variable():
    with pytest.raises(ParseError):
        parse_complex_literal("x+1")


def test_parse_error_offsets():
    with pytest.raises(ParseError) as info:
        parse_expression("x^2 + * 3")
    assert info.value.offset == 6
    assert "number" in info.value.expected or "'('" in info.value.expected
    with pytest.raises(ParseError) as info:
        parse_expression("exp(x")
    assert info.value.offset == 5
    with pytest.raises(ParseError) as info:
        parse_expression("")
    assert info.value.offset == 0
    with pytest.raises(ParseError):
        parse_expression("foo(x)")
    with pytest.raises(ParseError):
        parse_expression("2 @ 3")


def test_integer_power_validation():
    with pytest.raises(ParseError):
        parse_expression("x^-2")      # unary minus binds below ^
    with pytest.raises(ParseError):
        parse_expression("x^2.5")
    with pytest.raises(ParseError):
        parse_expression("x^x")
    assert ev("x^0", 7) == 1


def test_division_pole_surfaces_at_evaluation():
    ast = parse_expression("1/(2*x-1)")
    assert ast.eval(0.0) == -1
    with pytest.raises(EvaluationFailure):
        ast.eval(0.5)


def test_whitespace_and_nesting():
    assert ev("  ( 1 + 2 ) * sin( x ) ", 0.5) == pytest.approx(
        3 * math.sin(0.5), rel=1e-15)
    assert ev("cosh(x)^2 - sinh(x)^2", 0.8) == pytest.approx(1.0, rel=1e-12)
