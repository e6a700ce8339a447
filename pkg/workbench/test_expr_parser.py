#!/usr/bin/env python3
"""Test the expression parser and formatter"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest
from hypothesis import given, settings, strategies as st

from engine.errors import InputRejected, ParseError
from engine.expr_parser import (MAX_EXPONENT, MAX_NESTING, ExprSource, format_polynomial, infer_variables, parse,
                               parse_expression, tokenize)
from engine.laurent import LaurentPolynomial


def test_binomial_power():
    p = parse_expression("(1+x1)^4-7*x1^2", ["x1"])
    assert p == LaurentPolynomial(1, {(0,): 1, (1,): 4, (2,): -1, (3,): 4, (4,): 1})


def test_precedence_of_power_over_product():
    assert parse_expression("2*x1^2", ["x1"]) == LaurentPolynomial(1, {(2,): 2})
    assert parse_expression("-x1^2", ["x1"]) == LaurentPolynomial(1, {(2,): -1})


def test_rational_literal_and_negative_exponent():
    p = parse_expression("1/2*x1^-1 + 3/4", ["x1"])
    assert p.coefficient((-1,)) == Fraction(1, 2)
    assert p.coefficient((0,)) == Fraction(3, 4)


def test_variable_order_fixes_positions():
    p = parse_expression("x2 + 2*x1", ["x2", "x1"])
    assert p == LaurentPolynomial(2, {(1, 0): 1, (0, 1): 2})


def test_inferred_variables_use_natural_order():
    assert infer_variables("x10 + x2 + x1") == ["x1", "x2", "x10"]
    assert infer_variables("3") == ["x1"]
    src = ExprSource("y + x")
    assert src.variable_order == ["x", "y"]


def test_parse_with_source():
    p = parse(ExprSource("(x1 + x2)^2", ["x1", "x2"]))
    assert p.coefficient((1, 1)) == 2


@pytest.mark.parametrize("text, offset", [
    ("2x1", 1),
    ("1 + * 2", 4),
    ("x1^2^3", 4),
    ("(1+x1", 5),
    ("x1)", 2),
])
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(text, ["x1"])
    assert info.value.offset == offset
    assert f"at offset {offset}" in str(info.value)


@pytest.mark.parametrize("text", [
    "x1/2",
    "(1+x1)^-1",
    "1/0",
    "y + 1",
    "x1^(1/2)",
    "",
])
def test_rejected_inputs(text):
    with pytest.raises(ParseError):
        parse_expression(text, ["x1"])


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError) as info:
        parse_expression("(" * 3000 + "x1" + ")" * 3000, ["x1"])
    assert info.value.offset == MAX_NESTING
    nested = "(" * MAX_NESTING + "x1" + ")" * MAX_NESTING
    assert parse_expression(nested, ["x1"]) == parse_expression("x1", ["x1"])


def test_exponent_limit():
    with pytest.raises(ParseError) as info:
        parse_expression(f"(1 + x1)^{MAX_EXPONENT + 1}", ["x1"])
    assert info.value.offset == 9
    with pytest.raises(ParseError):
        parse_expression("x1^-99999999999", ["x1"])
    assert len(parse_expression(f"x1^{MAX_EXPONENT}", ["x1"])) == 1


def test_bad_variable_lists():
    with pytest.raises(InputRejected):
        ExprSource("x1", ["x1", "x1"])
    with pytest.raises(InputRejected):
        ExprSource("x1", ["1x"])


def test_tokens_record_offsets():
    tokens = tokenize("x1 + 20")
    assert [(t.typ, t.text, t.offset) for t in tokens[:3]] == [
        ("var", "x1", 0), ("op", "+", 3), ("int", "20", 5)]


@pytest.mark.parametrize("terms, text", [
    ({(0,): 1, (2,): -1}, "1 - x1^2"),
    ({}, "0"),
    ({(-1,): Fraction(1, 2)}, "1/2*x1^-1"),
    ({(1,): -1}, "-x1"),
])
def test_format_examples(terms, text):
    assert format_polynomial(LaurentPolynomial(1, terms)) == text


@given(st.dictionaries(
    keys=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    values=st.fractions(min_value=-9, max_value=9, max_denominator=7),
    max_size=6,
))
@settings(max_examples=200, deadline=None)
def test_format_parse_round_trip(terms):
    p = LaurentPolynomial(2, terms)
    assert parse_expression(format_polynomial(p, ["a", "b"]), ["a", "b"]) == p


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
