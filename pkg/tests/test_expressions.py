"""Expression grammar: parsing, printing, evaluation, symbolic derivative."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccalc.errors import ParseError
from fraccalc.expressions import (
    differentiate,
    evaluate,
    parse_expression,
    to_text,
)


def _val(text: str, x: float) -> complex:
    return complex(evaluate(parse_expression(text), np.array([x]))[0])


class TestGrammar:
    def test_lorentzian_shape(self) -> None:
        assert _val("1/(1+x^2)", 2.0) == pytest.approx(0.2)

    def test_exp_call(self) -> None:
        assert _val("exp(2*x)", 0.5) == pytest.approx(np.e)

    def test_power_right_associative(self) -> None:
        assert _val("2^3^2", 0.0) == pytest.approx(512.0)

    def test_unary_minus_binds_tighter_than_power(self) -> None:
        # documented precedence: -x^2 parses as (-x)^2
        assert _val("-x^2", 2.0) == pytest.approx(4.0)
        assert _val("0-x^2", 2.0) == pytest.approx(-4.0)

    def test_whitespace_insensitive(self) -> None:
        a = parse_expression("1/(1+x^2)")
        b = parse_expression(" 1 / ( 1 + x ^ 2 ) ")
        assert to_text(a) == to_text(b)

    def test_precedence_mul_over_add(self) -> None:
        assert _val("1+2*3", 0.0) == pytest.approx(7.0)
        assert _val("(1+2)*3", 0.0) == pytest.approx(9.0)

    def test_imaginary_literal(self) -> None:
        assert _val("2i*x", 3.0) == pytest.approx(6j)

    def test_complex_safe_evaluation(self) -> None:
        out = evaluate(parse_expression("x^0.5"), np.array([-1.0 + 0j]))
        assert complex(out[0]) == pytest.approx(1j)


class TestParseErrors:
    def test_truncated_input_offset(self) -> None:
        with pytest.raises(ParseError) as exc_info:
            parse_expression("1/(1+")
        assert exc_info.value.offset == 5
        assert any("number" in e or "x" in e for e in exc_info.value.expected)

    @pytest.mark.parametrize(
        "bad", ["", "1+", "(1+2", "1 2", "x y", "exp 2", "1/", "^2", "exp(x"]
    )
    def test_malformed_inputs(self, bad: str) -> None:
        with pytest.raises(ParseError):
            parse_expression(bad)

    def test_unknown_character(self) -> None:
        with pytest.raises(ParseError) as exc_info:
            parse_expression("1 + $")
        assert exc_info.value.offset == 4


class TestDerivative:
    @pytest.mark.parametrize(
        "text, point",
        [
            ("x^3", 1.3),
            ("1/(1+x^2)", 0.7),
            ("exp(2*x)", -0.4),
            ("x*exp(0-x)", 0.9),
            ("(1+x)^2.5", 0.5),
        ],
    )
    def test_matches_finite_differences(self, text: str, point: float) -> None:
        ast = parse_expression(text)
        d = differentiate(ast)
        h = 1e-6
        numeric = (_val_ast(ast, point + h) - _val_ast(ast, point - h)) / (2.0 * h)
        assert _val_ast(d, point) == pytest.approx(numeric, rel=1e-5)

    def test_constant_derivative_is_zero(self) -> None:
        d = differentiate(parse_expression("3.5"))
        assert _val_ast(d, 2.0) == 0.0

    def test_repeated_derivatives_stay_exact(self) -> None:
        ast = parse_expression("exp(2*x)")
        for _ in range(4):
            ast = differentiate(ast)
        assert _val_ast(ast, 0.0) == pytest.approx(16.0)


def _val_ast(node, x: float) -> complex:
    return complex(evaluate(node, np.array([x], dtype=complex))[0])


# -- fuzzed round-trip -------------------------------------------------------

_numbers = st.one_of(
    st.integers(min_value=0, max_value=9).map(float),
    st.floats(min_value=0.0, max_value=100.0, allow_nan=False, width=16),
)
_atoms = st.one_of(_numbers.map(lambda v: f"{v:g}"), st.just("x"))


def _combine(children: st.SearchStrategy[str]) -> st.SearchStrategy[str]:
    binary = st.tuples(children, st.sampled_from("+-*/^"), children).map(
        lambda t: f"({t[0]}{t[1]}{t[2]})"
    )
    unary = children.map(lambda s: f"(-{s})")
    call = children.map(lambda s: f"exp({s})")
    return st.one_of(binary, unary, call)


_expressions = st.recursive(_atoms, _combine, max_leaves=12)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(_expressions)
def test_parse_print_parse_fixed_point(text: str) -> None:
    ast = parse_expression(text)
    printed = to_text(ast)
    reparsed = parse_expression(printed)
    assert to_text(reparsed) == printed
    assert reparsed == ast
