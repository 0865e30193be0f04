"""Catalog factories and the CLI-facing function spec strings."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from fraccalc.catalog import (
    exp_function,
    expression_function,
    gaussian_function,
    lorentzian_function,
    make_function,
    rational_function,
)
from fraccalc.errors import InputError


class TestExpFunction:
    def test_value_and_derivatives(self) -> None:
        f = exp_function(2.0)
        assert complex(f(0.5)) == pytest.approx(math.e)
        assert complex(f.deriv(3)(0.0)) == pytest.approx(8.0)

    def test_complex_rate_from_string(self) -> None:
        f = exp_function("1+0.5i")
        c = complex(1.0, 0.5)
        assert complex(f(1.0)) == pytest.approx(np.exp(c))
        assert complex(f.deriv(2)(0.0)) == pytest.approx(c * c)

    def test_growth_hints(self) -> None:
        assert exp_function(1.0).growth_toward(-1) == -math.inf
        assert exp_function(1.0).growth_toward(+1) == math.inf
        assert exp_function(-2.0).growth_toward(+1) == -math.inf

    def test_bad_rate(self) -> None:
        with pytest.raises(InputError):
            exp_function("two")


class TestShapes:
    def test_lorentzian_derivatives_exact(self) -> None:
        f = lorentzian_function()
        x = 0.7
        assert complex(f(x)).real == pytest.approx(1.0 / (1.0 + x * x))
        assert complex(f.deriv(1)(x)).real == pytest.approx(
            -2.0 * x / (1.0 + x * x) ** 2, rel=1e-12
        )
        got = complex(f.deriv(2)(x)).real
        expected = (6.0 * x * x - 2.0) / (1.0 + x * x) ** 3
        assert got == pytest.approx(expected, rel=1e-12)

    def test_lorentzian_poles(self) -> None:
        assert set(lorentzian_function().poles) == {1j, -1j}

    def test_gaussian_derivatives(self) -> None:
        f = gaussian_function()
        x = 0.4
        assert complex(f.deriv(1)(x)).real == pytest.approx(
            -2.0 * x * math.exp(-x * x), rel=1e-12
        )
        assert complex(f.deriv(2)(x)).real == pytest.approx(
            (4.0 * x * x - 2.0) * math.exp(-x * x), rel=1e-12
        )


class TestRationalFunction:
    def test_double_pole(self) -> None:
        f = rational_function('{"terms": [{"a": [1, 0], "z": [0, 1], "n": 1}]}')
        z = 2.0
        assert complex(f(z)) == pytest.approx(1.0 / (z - 1j) ** 2)
        assert complex(f.deriv(1)(z)) == pytest.approx(-2.0 / (z - 1j) ** 3)
        assert f.poles == (1j,)

    def test_from_path(self, tmp_path) -> None:
        payload = {"terms": [{"a": [0.5, 0], "z": [1, 0], "n": 0}]}
        path = tmp_path / "pole.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        f = rational_function(f"@{path}")
        assert complex(f(3.0)) == pytest.approx(0.25)

    def test_malformed_json(self) -> None:
        with pytest.raises(InputError):
            rational_function("{not json")
        with pytest.raises(InputError):
            rational_function('{"terms": [{"a": [1, 0]}]}')


class TestExpressionFunction:
    def test_symbolic_derivatives(self) -> None:
        f = expression_function("x*exp(0-x)")
        x = 0.8
        assert complex(f(x)).real == pytest.approx(x * math.exp(-x))
        assert complex(f.deriv(1)(x)).real == pytest.approx(
            (1.0 - x) * math.exp(-x), rel=1e-12
        )

    def test_matches_gaussian_catalog_entry(self) -> None:
        # exp(0-x^2) sidesteps the unary-minus precedence of exp(-x^2)
        f = expression_function("exp(0-x^2)")
        g = gaussian_function()
        xs = np.linspace(-2.0, 2.0, 9)
        assert np.allclose(f(xs), g(xs))


class TestMakeFunction:
    @pytest.mark.parametrize(
        "spec, x, expected",
        [
            ("lorentzian", 1.0, 0.5),
            ("gaussian", 0.0, 1.0),
            ("exp(2)", 0.5, math.e),
            ("expr:1/(1+x^2)", 1.0, 0.5),
        ],
    )
    def test_dispatch(self, spec: str, x: float, expected: float) -> None:
        f = make_function(spec)
        assert complex(f(x)).real == pytest.approx(expected)

    def test_rational_spec(self) -> None:
        f = make_function('rational:{"terms": [{"a": [1, 0], "z": [0, 1], "n": 0}]}')
        assert complex(f(0.0)) == pytest.approx(1j)

    def test_unknown_spec(self) -> None:
        with pytest.raises(InputError):
            make_function("cauchy")
