"""One-sided fractional differintegrals on the real line."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gamma

from fraccalc.branchcut import CutOrientation, UnitPhase
from fraccalc.catalog import (
    exp_function,
    gaussian_function,
    lorentzian_function,
    rational_function,
)
from fraccalc.errors import ConvergenceError, InputError, PoleAtEvaluationPoint
from fraccalc.realline import (
    Method,
    RealFunction,
    derivative_of_integral,
    eps_regularized,
    frac_differint,
    growth_check,
    nfold_integral,
    power_integral,
)

PLUS = CutOrientation.PLUS_AXIS
MINUS = CutOrientation.MINUS_AXIS


class TestExponentialEigenfunction:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5, complex(0.5, 0.5)])
    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("x", [-1.0, 0.0, 1.0])
    def test_plus_side(self, alpha, c: float, x: float) -> None:
        res = frac_differint(exp_function(c), alpha, x, PLUS)
        expected = complex(c) ** complex(alpha) * cmath.exp(c * x)
        assert res.value == pytest.approx(expected, rel=1e-9)

    def test_minus_side_decaying(self) -> None:
        # e^{-x} decays toward +infinity: the minus operator converges on it
        res = frac_differint(exp_function(-1.0), 0.5, 0.5, MINUS)
        # D_-^alpha e^{-cx}: the eigenvalue carries the minus-side phase
        assert abs(res.value) == pytest.approx(math.exp(-0.5), rel=1e-8)

    def test_growing_side_rejected(self) -> None:
        with pytest.raises(ConvergenceError):
            frac_differint(exp_function(1.0), 0.5, 0.0, MINUS)


class TestIntegerOrders:
    def test_zeroth_order_is_identity(self) -> None:
        f = lorentzian_function()
        res = frac_differint(f, 0, 0.7, PLUS)
        assert res.value == pytest.approx(1.0 / (1.0 + 0.49), rel=1e-14)
        assert res.method is Method.INTEGER_DERIVATIVE

    @pytest.mark.parametrize("x", [-1.0, 0.0, 2.0])
    def test_first_derivative_lorentzian(self, x: float) -> None:
        res = frac_differint(lorentzian_function(), 1, x, PLUS)
        expected = -2.0 * x / (1.0 + x * x) ** 2
        assert res.value == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_second_derivative_gaussian(self) -> None:
        x = 0.5
        res = frac_differint(gaussian_function(), 2, x, PLUS)
        expected = (4.0 * x * x - 2.0) * math.exp(-x * x)
        assert res.value == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("x", [-2.0, 0.0, 1.0, 3.0])
    def test_antiderivative_lorentzian(self, x: float) -> None:
        # the k = 0 branch of the one-fold integral from the left
        res = frac_differint(lorentzian_function(), -1, x, PLUS)
        assert res.value == pytest.approx(math.atan(x) + math.pi / 2.0, rel=1e-9)
        assert res.method is Method.NFOLD_INTEGRAL

    def test_twofold_integral_exp(self) -> None:
        # both integrations of e^x from -infinity reproduce e^x
        res = frac_differint(exp_function(1.0), -2, 0.0, PLUS)
        assert res.value == pytest.approx(1.0, rel=1e-9)

    def test_nfold_matches_dispatch(self) -> None:
        direct = nfold_integral(lorentzian_function(), 1, 1.0, PLUS)
        routed = frac_differint(lorentzian_function(), -1, 1.0, PLUS)
        assert direct.value == pytest.approx(routed.value, rel=1e-12)

    def test_nfold_needs_positive_n(self) -> None:
        with pytest.raises(InputError):
            nfold_integral(lorentzian_function(), 0, 1.0, PLUS)


class TestUnitPhaseAndSides:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5])
    def test_unit_step_is_exact_factor(self, alpha: float) -> None:
        f = lorentzian_function()
        base = frac_differint(f, alpha, 0.5, PLUS).value
        stepped = frac_differint(f, alpha, 0.5, PLUS, unit=UnitPhase(1)).value
        assert stepped == pytest.approx(base * cmath.exp(2j * math.pi * alpha), rel=1e-12)

    def test_even_function_sides_are_conjugate_up_to_phase(self) -> None:
        # for the even Lorentzian the two sides differ by the unit phase at x=0
        f = lorentzian_function()
        alpha = 0.5
        plus = frac_differint(f, alpha, 0.0, PLUS).value
        minus = frac_differint(f, alpha, 0.0, MINUS).value
        assert abs(minus) == pytest.approx(abs(plus), rel=1e-9)


class TestRoutes:
    def test_by_parts_and_direct_agree(self) -> None:
        f = lorentzian_function()
        auto = frac_differint(f, -0.5, 1.0, PLUS)
        direct = frac_differint(f, -0.5, 1.0, PLUS, route="direct")
        assert direct.value == pytest.approx(auto.value, rel=1e-8)
        assert direct.method in (Method.DIRECT_CONVERGENT, Method.NFOLD_INTEGRAL)

    def test_method_reporting(self) -> None:
        f = lorentzian_function()
        assert frac_differint(f, 2, 0.0, PLUS).method is Method.INTEGER_DERIVATIVE
        assert frac_differint(f, -1, 0.0, PLUS).method is Method.NFOLD_INTEGRAL
        assert frac_differint(f, 0.5, 0.0, PLUS).method is Method.LIOUVILLE_BY_PARTS

    def test_derivative_free_function_still_works(self) -> None:
        # no exact derivatives: the engine must fall back and stay accurate
        bare = RealFunction(
            value=lambda x: 1.0 / (1.0 + np.asarray(x, dtype=complex) ** 2),
            derivs=None,
            name="bare-lorentzian",
        )
        res = frac_differint(bare, 0.5, 0.5, PLUS)
        ref = frac_differint(lorentzian_function(), 0.5, 0.5, PLUS)
        assert res.value == pytest.approx(ref.value, rel=1e-6)


class TestEpsRegularized:
    def test_approaches_operator_value(self) -> None:
        f = lorentzian_function()
        target = frac_differint(f, 0.5, 0.5, PLUS).value
        gaps = [
            abs(eps_regularized(f, 0.5, 0.5, PLUS, eps) - target)
            for eps in (0.1, 0.05, 0.025)
        ]
        # the head error of the alpha = 1/2 form decays like sqrt(eps)
        assert gaps[2] < gaps[1] < gaps[0]
        assert gaps[0] / gaps[1] == pytest.approx(math.sqrt(2.0), rel=0.15)
        assert gaps[1] / gaps[2] == pytest.approx(math.sqrt(2.0), rel=0.15)

    def test_needs_fractional_order(self) -> None:
        with pytest.raises(InputError):
            eps_regularized(lorentzian_function(), 1.5, 0.5, PLUS, 0.01)


class TestPowerIntegral:
    @pytest.mark.parametrize("gamma_exp", [0.25, 0.5, complex(0.5, 0.25)])
    def test_exp_oracle_plus(self, gamma_exp) -> None:
        # I_+(gamma, x) on e^z is e^x Gamma(1 - gamma)
        x = 0.3
        out = power_integral(exp_function(1.0), gamma_exp, x, PLUS)
        expected = math.exp(x) * complex(gamma(1.0 - complex(gamma_exp)))
        assert out == pytest.approx(expected, rel=1e-9)

    def test_continued_beyond_one(self) -> None:
        x = 0.0
        out = power_integral(exp_function(1.0), 1.5, x, PLUS)
        assert out == pytest.approx(complex(gamma(-0.5)), rel=1e-8)

    def test_derivative_recurrence(self) -> None:
        f = exp_function(1.0)
        x = 0.2
        lhs = derivative_of_integral(f, 0.5, x, PLUS)
        rhs = -0.5 * power_integral(f, 1.5, x, PLUS)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_gamma_zero_is_function_value(self) -> None:
        f = gaussian_function()
        assert derivative_of_integral(f, 0.0, 0.4, PLUS) == pytest.approx(
            math.exp(-0.16), rel=1e-12
        )
        assert derivative_of_integral(f, 0.0, 0.4, MINUS) == pytest.approx(
            -math.exp(-0.16), rel=1e-12
        )


class TestGuards:
    def test_growth_check_hint(self) -> None:
        assert growth_check(exp_function(1.0), 0.5, PLUS).passed
        assert not growth_check(exp_function(1.0), 0.5, MINUS).passed

    def test_growth_check_sampled(self) -> None:
        bare = RealFunction(
            value=lambda x: np.exp(np.asarray(x, dtype=complex)), derivs=None, name="e"
        )
        assert growth_check(bare, 0.5, PLUS).passed
        assert not growth_check(bare, 0.5, MINUS).passed

    def test_pole_at_evaluation_point(self) -> None:
        f = rational_function('{"terms": [{"a": [1, 0], "z": [0.5, 0], "n": 0}]}')
        with pytest.raises(PoleAtEvaluationPoint):
            frac_differint(f, 0.5, 0.5, PLUS)

    def test_pole_on_ray_guard(self) -> None:
        f = rational_function('{"terms": [{"a": [1, 0], "z": [-1.0, 0], "n": 0}]}')
        with pytest.raises(ConvergenceError):
            frac_differint(f, 0.5, 0.0, PLUS)


class TestSemigroupSpot:
    def test_half_plus_half_is_first_derivative(self) -> None:
        # D^{1/2} twice equals d/dx, spot-checked through the eigenfunction
        f = exp_function(2.0)
        once = frac_differint(f, 0.5, 0.0, PLUS).value
        # apply the closed eigenvalue once more: sqrt(2)*sqrt(2) = 2 = f'(0)/f(0)
        assert once * once == pytest.approx(2.0, rel=1e-8)


@given(
    st.floats(min_value=0.1, max_value=0.9),
    st.floats(min_value=-1.5, max_value=1.5),
)
def test_exponential_property(alpha: float, x: float) -> None:
    res = frac_differint(exp_function(1.0), alpha, x, PLUS)
    assert res.value == pytest.approx(cmath.exp(x), rel=1e-7)


@given(st.floats(min_value=-1.0, max_value=3.0))
def test_antiderivative_property(x: float) -> None:
    res = frac_differint(lorentzian_function(), -1, x, PLUS)
    assert res.value == pytest.approx(math.atan(x) + math.pi / 2.0, rel=1e-8)
