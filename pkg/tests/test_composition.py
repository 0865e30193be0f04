"""Composition law, identity suites, and the kernel-product line integral."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraccalc.branchcut import CutOrientation
from fraccalc.catalog import exp_function, lorentzian_function
from fraccalc.composition import (
    HKind,
    beta_identity_suite,
    gamma_reflection,
    j_closed,
    j_numeric,
    materialize_differint,
    negative_order_composition,
    phase_table_check,
    report_json,
    verify_composition,
)
from fraccalc.errors import AccuracyError, InputError
from fraccalc.poleform import lorentzian_closed
from fraccalc.realline import frac_differint

PLUS = CutOrientation.PLUS_AXIS
MINUS = CutOrientation.MINUS_AXIS


class TestVerifyComposition:
    @pytest.mark.parametrize(
        ("alpha", "beta"), [(0.25, 0.5), (0.5, 0.5), (0.75, 0.25)]
    )
    def test_exponential_semigroup(self, alpha: float, beta: float) -> None:
        report = verify_composition(exp_function(1.0), alpha, beta, 0.3, PLUS)
        assert report.residual < 1e-4
        assert report.notes == "materialized inner, quadrature outer"

    def test_half_twice_is_first_derivative(self) -> None:
        report = verify_composition(exp_function(1.0), 0.5, 0.5, 0.0, PLUS)
        assert report.residual < 1e-6
        # D^1 e^x at 0 is 1
        assert report.lhs == pytest.approx(1.0, rel=1e-9)
        assert report.rhs == pytest.approx(1.0, rel=1e-6)

    def test_lorentzian_semigroup(self) -> None:
        report = verify_composition(lorentzian_function(), 0.5, 0.25, 0.5, PLUS)
        assert report.residual < 1e-4

    def test_lorentzian_minus_side(self) -> None:
        report = verify_composition(
            lorentzian_function(), 0.25, 0.25, -0.3, MINUS
        )
        assert report.residual < 1e-4

    def test_identity_outer_order(self) -> None:
        report = verify_composition(exp_function(1.0), 0.0, 0.5, 0.2, PLUS)
        assert report.notes == "identity outer order"
        assert report.residual < 1e-10

    def test_inner_grid_reuse(self) -> None:
        inner = materialize_differint(exp_function(1.0), 0.5, PLUS, 0.5)
        for alpha in (0.25, 0.75):
            report = verify_composition(
                exp_function(1.0), alpha, 0.5, 0.3, PLUS, inner=inner
            )
            assert report.residual < 1e-8


class TestMaterializeDifferint:
    def test_matches_direct_evaluation(self) -> None:
        g = materialize_differint(exp_function(1.0), 0.5, PLUS, 1.0)
        for x in (-1.0, 0.0, 0.9):
            direct = frac_differint(exp_function(1.0), 0.5, x).value
            assert abs(complex(g(x)) - direct) / abs(direct) < 1e-8

    def test_derivatives_shift_the_order(self) -> None:
        g = materialize_differint(exp_function(1.0), 0.5, PLUS, 1.0)
        got = complex(np.atleast_1d(g.deriv(1)(np.array([0.4])))[0])
        want = frac_differint(exp_function(1.0), 1.5, 0.4).value
        assert got == pytest.approx(want, rel=1e-8)

    def test_point_eval_injection(self) -> None:
        calls: list[float] = []

        def closed(order, x: float) -> complex:
            calls.append(x)
            return lorentzian_closed(order, x, k=0)

        g = materialize_differint(
            lorentzian_function(), 0.5, PLUS, 0.5, point_eval=closed
        )
        assert calls  # the grid was built from the injected oracle
        got = complex(g(0.2))
        assert got == pytest.approx(lorentzian_closed(0.5, 0.2, k=0), abs=1e-8)


class TestGammaReflection:
    @pytest.mark.parametrize(
        "gamma",
        [0.3, 0.6, 1.7, -0.25, complex(0.5, 0.5), complex(2.5, -1.25)],
    )
    def test_residual_at_machine_scale(self, gamma) -> None:
        assert gamma_reflection(gamma) < 1e-12

    @given(
        st.complex_numbers(
            min_magnitude=0.05, max_magnitude=3.0, allow_nan=False
        ).filter(lambda g: abs(g.real - round(g.real)) > 0.05)
    )
    def test_residual_property(self, gamma: complex) -> None:
        assert gamma_reflection(gamma) < 1e-10


class TestBetaIdentitySuite:
    @pytest.mark.parametrize(
        ("a", "b", "x", "z"),
        [(0.6, 0.7, 0.0, 1.0), (0.8, 0.3, -0.5, 0.7), (0.55, 0.5, 0.25, 1.5)],
    )
    def test_all_residuals(self, a: float, b: float, x: float, z: float) -> None:
        report = beta_identity_suite(a, b, x, z)
        assert report.quadrature_residual < 1e-8
        assert report.cosine_residual < 1e-8
        assert report.sine_residual < 1e-10

    def test_argument_order_is_symmetric(self) -> None:
        forward = beta_identity_suite(0.6, 0.7, 0.0, 1.0)
        swapped = beta_identity_suite(0.7, 0.6, 1.0, 0.0)
        assert swapped.quadrature_residual == pytest.approx(
            forward.quadrature_residual, abs=1e-12
        )

    @pytest.mark.parametrize(
        ("a", "b", "x", "z"),
        [
            (0.3, 0.3, 0.0, 1.0),  # a + b <= 1
            (1.2, 0.5, 0.0, 1.0),  # a >= 1
            (0.6, 0.7, 0.5, 0.5),  # coincident points
        ],
    )
    def test_domain_constraints(self, a, b, x, z) -> None:
        with pytest.raises(InputError):
            beta_identity_suite(a, b, x, z)


class TestPhaseTable:
    """Light subset; the full 16-entry sweep runs in the acceptance suite."""

    @pytest.mark.parametrize(
        ("kind_a", "kind_b", "vanishes"),
        [
            (HKind.SUP_PLUS, HKind.SUP_PLUS, False),
            (HKind.SUB_MINUS, HKind.SUB_MINUS, False),
            (HKind.SUP_PLUS, HKind.SUB_PLUS, True),
            (HKind.SUB_PLUS, HKind.SUP_PLUS, True),
        ],
    )
    def test_matched_and_mixed_placements(
        self, kind_a: HKind, kind_b: HKind, vanishes: bool
    ) -> None:
        report = phase_table_check(kind_a, kind_b, 0.6, 0.7, 0.3, 1.1)
        assert report.residual < 1e-3
        if vanishes:
            assert report.expected == 0
        else:
            assert abs(report.expected) > 1.0

    def test_placement_flag(self) -> None:
        assert HKind.SUB_PLUS.is_upper_placement
        assert not HKind.SUP_MINUS.is_upper_placement

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"a": 0.3, "b": 0.3},  # a + b <= 1
            {"x": 1.1, "z": 1.1},  # coincident
            {"taus": (1e-3, 1e-2)},  # not decreasing
            {"taus": (1e-2,)},  # wrong arity
        ],
    )
    def test_domain_constraints(self, kwargs) -> None:
        base = dict(
            kind_a=HKind.SUP_PLUS,
            kind_b=HKind.SUP_PLUS,
            a=0.6,
            b=0.7,
            x=0.3,
            z=1.1,
        )
        base.update(kwargs)
        with pytest.raises(InputError):
            phase_table_check(**base)


class TestJIntegral:
    CASES = (
        (0j, 1.0 + 0j, 0.4, 0.35),
        (0.2 - 0.3j, 1.1 + 0.4j, 0.3, 0.25),
        (0j, 2j, "1/3", 0.5),
    )

    @pytest.mark.parametrize(("z1", "z2", "alpha", "beta"), CASES)
    def test_separating_bisector_matches_closed_form(
        self, z1, z2, alpha, beta
    ) -> None:
        closed = j_closed(z1, z2, alpha, beta)
        numeric = j_numeric(z1, z2, alpha, beta)
        assert abs(numeric - closed) / abs(closed) < 1e-6

    @pytest.mark.parametrize(("z1", "z2", "alpha", "beta"), CASES)
    def test_orientation_reversal_flips_sign(self, z1, z2, alpha, beta) -> None:
        forward = j_numeric(z1, z2, alpha, beta)
        backward = j_numeric(z1, z2, alpha, beta, reverse=True)
        assert backward == pytest.approx(-forward, rel=1e-12)

    @pytest.mark.parametrize(
        ("z1", "z2", "alpha", "beta", "line"),
        [
            (0j, 1.0 + 0j, 0.4, 0.35, (2j, 0.0)),
            (0j, 1.0 + 0j, 0.4, 0.35, (0.5 - 2j, 0.0)),
            (0.2 - 0.3j, 1.1 + 0.4j, 0.3, 0.25, (3j, 0.0)),
        ],
    )
    def test_non_separating_line_vanishes(
        self, z1, z2, alpha, beta, line
    ) -> None:
        assert abs(j_numeric(z1, z2, alpha, beta, line=line)) < 1e-8

    def test_explicit_separating_line(self) -> None:
        # vertical line through the gap: separates and avoids both cut rays
        numeric = j_numeric(0j, 1.0 + 0j, 0.4, 0.35, line=(0.5, math.pi / 2))
        closed = j_closed(0j, 1.0 + 0j, 0.4, 0.35)
        assert numeric == pytest.approx(closed, rel=1e-9)

    def test_coincident_points_rejected(self) -> None:
        with pytest.raises(InputError):
            j_closed(1j, 1j, 0.4, 0.35)

    def test_order_sum_constraint(self) -> None:
        with pytest.raises(InputError):
            j_closed(0j, 1j, -0.6, -0.5)

    def test_slow_tail_raises_accuracy_error(self) -> None:
        with pytest.raises(AccuracyError):
            j_numeric(0j, 1.0 + 0j, -0.5, -0.48)


class TestNegativeOrderComposition:
    @pytest.mark.parametrize(
        ("n", "beta", "x", "z", "side"),
        [
            (1, -0.5, 1.0, 0.2, PLUS),
            (2, -0.3, 0.5, -0.5, PLUS),
            (1, -0.5, 0.2, 1.0, MINUS),
            (3, -0.8, 2.0, 0.0, PLUS),
        ],
    )
    def test_overlap_residual(self, n, beta, x, z, side) -> None:
        assert negative_order_composition(n, beta, x, z, side) < 1e-6

    @pytest.mark.parametrize(
        ("x", "z", "side"), [(1.0, 0.2, MINUS), (0.2, 1.0, PLUS)]
    )
    def test_vanishing_side_is_exact(self, x, z, side) -> None:
        assert negative_order_composition(1, -0.5, x, z, side) == 0.0

    def test_domain_constraints(self) -> None:
        with pytest.raises(InputError):
            negative_order_composition(0, -0.5, 1.0, 0.0, PLUS)
        with pytest.raises(InputError):
            negative_order_composition(1, 0.5, 1.0, 0.0, PLUS)


class TestReportJson:
    def test_round_trip_fields(self) -> None:
        text = report_json(
            "semigroup",
            {"alpha": 0.5},
            lhs=1.0 + 2.0j,
            rhs=1.0 + 2.0j,
            residual=1e-9,
            tolerance=1e-4,
        )
        data = json.loads(text)
        assert data["case"] == "semigroup"
        assert data["lhs"] == [1.0, 2.0]
        assert data["pass"] is True

    def test_failure_flag(self) -> None:
        data = json.loads(
            report_json("x", {}, 1.0, 2.0, residual=0.5, tolerance=1e-4)
        )
        assert data["pass"] is False
