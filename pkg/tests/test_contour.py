"""The curvilinear operator: geometry, specialization, and path dependence."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from fraccalc.branchcut import CutOrientation, UnitPhase
from fraccalc.catalog import exp_function, gaussian_function, lorentzian_function
from fraccalc.contour import (
    CurvePsi,
    PsiSide,
    curve_composition_check,
    curve_psi_from_json,
    curve_psi_to_json,
    frac_differint_curve,
    induced_branch_choice,
    induced_cut,
    nfold_primitive_curve,
    psi_side_labels,
    ray_growth_check,
    real_axis_curve,
    remainder_integral,
)
from fraccalc.errors import ConvergenceError, GeometryError, InputError
from fraccalc.poleform import (
    PoleTerm,
    closed_frac_deriv,
    lorentzian_pole_form,
    primitive_difference,
)
from fraccalc.realline import Method, frac_differint

LOR = lorentzian_function()
GAU = gaussian_function()
AXIS = real_axis_curve()

#: a bent curve through the origin region, poles of the Lorentzian off-curve
BENT = CurvePsi((-1 + 0.5j, 0j, 0.5 + 0.5j, 1.5), math.pi, -0.3)

#: the same endpoints as the real axis, detouring through the upper/lower
#: half-planes between -1.5 and 1.5 (no poles of the Gaussian anywhere)
WIGGLE = CurvePsi((-1.5, -0.5 + 0.3j, 0.5 - 0.3j, 1.5), math.pi, 0.0)


class TestCurveGeometry:
    def test_point_and_tangent_on_the_axis(self) -> None:
        assert AXIS.point(-2.0) == pytest.approx(-2.0)
        assert AXIS.point(3.5) == pytest.approx(3.5)
        assert AXIS.tangent(1.0) == pytest.approx(1.0 + 0j)
        assert AXIS.normal(1.0) == pytest.approx(1j)

    def test_polyline_interpolation(self) -> None:
        psi = CurvePsi((0j, 1 + 1j), math.pi * 0.75, 0.25 * math.pi)
        mid = psi.point(0.5 * abs(1 + 1j))
        assert mid == pytest.approx(0.5 + 0.5j)

    def test_empty_vertices_rejected(self) -> None:
        with pytest.raises(InputError):
            CurvePsi((), math.pi, 0.0)

    def test_self_intersection_rejected(self) -> None:
        with pytest.raises((InputError, GeometryError)):
            CurvePsi((0j, 2 + 0j, 1 + 1j, 1 - 1j), math.pi, 0.0)

    def test_side_labels_of_the_axis(self) -> None:
        plus, minus = psi_side_labels(AXIS)
        assert plus.side is PsiSide.PLUS
        assert plus.endpoint_angle == pytest.approx(math.pi)
        assert minus.side is PsiSide.MINUS
        assert minus.endpoint_angle == pytest.approx(0.0)

    def test_degenerate_endpoint_directions(self) -> None:
        with pytest.raises(GeometryError):
            psi_side_labels(CurvePsi((0j, 1 + 0j), 0.3, 0.3))


class TestRealAxisSpecialization:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5])
    @pytest.mark.parametrize("x", [-1.0, 0.6])
    def test_plus_side_matches_realline(self, alpha: float, x: float) -> None:
        on_curve = frac_differint_curve(LOR, alpha, x, AXIS, PsiSide.PLUS).value
        on_line = frac_differint(LOR, alpha, x).value
        assert abs(on_curve - on_line) / abs(on_line) < 1e-5

    def test_minus_side_matches_realline(self) -> None:
        on_curve = frac_differint_curve(LOR, 0.5, 0.3, AXIS, PsiSide.MINUS).value
        on_line = frac_differint(
            LOR, 0.5, 0.3, side=CutOrientation.MINUS_AXIS
        ).value
        assert abs(on_curve - on_line) / abs(on_line) < 1e-5

    def test_reports_regularized_method(self) -> None:
        res = frac_differint_curve(GAU, 0.5, 0.0, AXIS, PsiSide.PLUS)
        assert res.method is Method.EPS_REGULARIZED
        assert res.est_error < 1e-6


class TestPathIndependence:
    def test_entire_function_statement_three(self) -> None:
        # no poles between the two curves: values agree up to UnitPhase
        v1 = frac_differint_curve(GAU, 0.5, 2.0, AXIS, PsiSide.PLUS).value
        v2 = frac_differint_curve(GAU, 0.5, 2.0, WIGGLE, PsiSide.PLUS).value
        best = min(
            abs(v1 - v2 * cmath.exp(2j * math.pi * m * 0.5)) / abs(v1)
            for m in range(-2, 3)
        )
        assert best < 1e-5
        # and for this geometry the default branches coincide outright
        assert abs(v1 - v2) / abs(v1) < 1e-5

    def test_integer_orders_are_path_independent_exactly(self) -> None:
        va = frac_differint_curve(GAU, 2.0, 2.0, AXIS, PsiSide.PLUS).value
        vb = frac_differint_curve(GAU, 2.0, 2.0, WIGGLE, PsiSide.PLUS).value
        want = (4 * 4.0 - 2) * math.exp(-4.0)
        assert va == pytest.approx(vb, rel=1e-12)
        assert va == pytest.approx(want, rel=1e-10)


class TestIntegerOrdersOnCurves:
    def test_first_derivative_on_bent_curve(self) -> None:
        z0 = 0.25 + 0.25j
        res = frac_differint_curve(LOR, 1.0, z0, BENT, PsiSide.PLUS)
        want = -2 * z0 / (1 + z0 * z0) ** 2
        assert res.value == pytest.approx(want, rel=1e-12)
        assert res.method is Method.INTEGER_DERIVATIVE

    def test_antiderivative_on_the_axis(self) -> None:
        res = frac_differint_curve(LOR, -1.0, 0.5, AXIS, PsiSide.PLUS)
        assert res.value == pytest.approx(math.atan(0.5) + math.pi / 2, rel=1e-9)
        assert res.method is Method.NFOLD_INTEGRAL

    def test_nfold_needs_positive_n(self) -> None:
        with pytest.raises(InputError):
            nfold_primitive_curve(LOR, 0, 0.5, AXIS, PsiSide.PLUS)


class TestPoleFormCrossCheck:
    @pytest.mark.parametrize(
        ("side", "windings"),
        [(PsiSide.PLUS, (-1, -1)), (PsiSide.MINUS, (0, -1))],
    )
    def test_bent_curve_windings_and_value(self, side: PsiSide, windings) -> None:
        h = lorentzian_pole_form()
        z0 = 0.25 + 0.25j
        choice = induced_branch_choice(h, z0, BENT, side)
        assert choice.assignment.windings == windings
        closed = closed_frac_deriv(h, 0.5, z0, choice)
        curve = frac_differint_curve(LOR, 0.5, z0, BENT, side).value
        assert abs(closed - curve) / abs(closed) < 1e-6

    def test_axis_windings_reproduce_straight_cut(self) -> None:
        h = lorentzian_pole_form()
        choice = induced_branch_choice(h, 0.6, AXIS, PsiSide.PLUS)
        from fraccalc.poleform import branch_choice_for_side

        straight = branch_choice_for_side(h, 0.6, CutOrientation.PLUS_AXIS)
        value_curve = closed_frac_deriv(h, 0.5, 0.6, choice)
        value_straight = closed_frac_deriv(h, 0.5, 0.6, straight)
        assert value_curve == pytest.approx(value_straight, rel=1e-12)


class TestLoopJump:
    def test_bump_curve_jumps_by_the_residue_polynomial(self) -> None:
        # detouring over the pole at +i changes the antiderivative by the
        # closed-form winding jump of that pole's term
        bump = CurvePsi((-2.0, -1.0 + 2.0j, 1.0 + 2.0j, 2.0), math.pi, 0.0)
        v_bump = nfold_primitive_curve(LOR, 1, 3.0, bump, PsiSide.PLUS)
        v_axis = nfold_primitive_curve(LOR, 1, 3.0, AXIS, PsiSide.PLUS)
        jump = primitive_difference(1, PoleTerm(a=-0.5j, z=1j), 3.0, m=-1)
        assert v_bump - v_axis == pytest.approx(jump, abs=1e-9)


class TestRemainderIntegral:
    @staticmethod
    def _square(center: complex, r: float) -> list[complex]:
        pts = [
            center + r * (1 + 1j),
            center + r * (-1 + 1j),
            center + r * (-1 - 1j),
            center + r * (1 - 1j),
        ]
        return pts + [pts[0]]

    def test_ccw_pole_loops_reproduce_the_operator(self) -> None:
        z0 = 0.6
        cut = induced_cut(AXIS, z0, PsiSide.PLUS)
        choice = induced_branch_choice(lorentzian_pole_form(), z0, AXIS, PsiSide.PLUS)
        total = remainder_integral(
            LOR, 0.5, z0, self._square(1j, 0.3), cut, choice.assignment
        ) + remainder_integral(
            LOR, 0.5, z0, self._square(-1j, 0.3), cut, choice.assignment
        )
        reconstructed = UnitPhase(0).value(0.5) * total
        operator = frac_differint_curve(LOR, 0.5, z0, AXIS, PsiSide.PLUS).value
        assert abs(reconstructed - operator) / abs(operator) < 1e-6

    def test_clockwise_orientation_breaks_the_identity(self) -> None:
        z0 = 0.6
        cut = induced_cut(AXIS, z0, PsiSide.PLUS)
        choice = induced_branch_choice(lorentzian_pole_form(), z0, AXIS, PsiSide.PLUS)
        total = remainder_integral(
            LOR, 0.5, z0, self._square(1j, 0.3)[::-1], cut, choice.assignment
        ) + remainder_integral(
            LOR, 0.5, z0, self._square(-1j, 0.3)[::-1], cut, choice.assignment
        )
        reconstructed = UnitPhase(0).value(0.5) * total
        operator = frac_differint_curve(LOR, 0.5, z0, AXIS, PsiSide.PLUS).value
        assert abs(reconstructed - operator) / abs(operator) > 1.0

    def test_arc_crossing_the_cut_rejected(self) -> None:
        z0 = 0.6
        cut = induced_cut(AXIS, z0, PsiSide.PLUS)
        choice = induced_branch_choice(lorentzian_pole_form(), z0, AXIS, PsiSide.PLUS)
        crossing = [-1.0 + 0.5j, -1.0 - 0.5j]  # crosses the cut ray toward -inf
        with pytest.raises(GeometryError):
            remainder_integral(LOR, 0.5, z0, crossing, cut, choice.assignment)

    def test_degenerate_arc_rejected(self) -> None:
        z0 = 0.6
        cut = induced_cut(AXIS, z0, PsiSide.PLUS)
        choice = induced_branch_choice(lorentzian_pole_form(), z0, AXIS, PsiSide.PLUS)
        with pytest.raises(InputError):
            remainder_integral(LOR, 0.5, z0, [1j], cut, choice.assignment)


class TestUnitPhaseOnCurves:
    def test_unit_multiplies_by_full_turns(self) -> None:
        v0 = frac_differint_curve(GAU, 0.5, 0.0, AXIS, PsiSide.PLUS).value
        v1 = frac_differint_curve(
            GAU, 0.5, 0.0, AXIS, PsiSide.PLUS, unit=UnitPhase(1)
        ).value
        assert v1 == pytest.approx(v0 * cmath.exp(2j * math.pi * 0.5), rel=1e-12)


class TestCurveComposition:
    def test_exponential_on_the_axis(self) -> None:
        report = curve_composition_check(
            exp_function(1.0), 0.4, 0.6, 0.0, AXIS, PsiSide.PLUS
        )
        assert report.residual < 1e-6
        assert "straight line" in report.notes

    def test_lorentzian_minus_side(self) -> None:
        report = curve_composition_check(LOR, 0.5, 0.25, 0.5, AXIS, PsiSide.MINUS)
        assert report.residual < 1e-6

    def test_bent_curve_rejected(self) -> None:
        with pytest.raises(InputError):
            curve_composition_check(LOR, 0.5, 0.25, 0.25 + 0.25j, BENT, PsiSide.PLUS)


class TestGrowthAndGeometryErrors:
    def test_growth_violation_raises(self) -> None:
        # e^x grows toward +inf, where the minus-side half-curve runs
        with pytest.raises(ConvergenceError):
            frac_differint_curve(exp_function(1.0), 0.5, 0.0, AXIS, PsiSide.MINUS)

    def test_growth_check_passes_for_decay(self) -> None:
        ok, detail = ray_growth_check(GAU, 0.5, 2.0 + 0j, math.pi)
        assert ok
        assert "decay confirmed" in detail

    def test_growth_check_fails_for_growth(self) -> None:
        ok, detail = ray_growth_check(exp_function(1.0), 0.5, 0j, 0.0)
        assert not ok
        assert "does not vanish" in detail

    def test_pole_on_half_curve_rejected(self) -> None:
        through_pole = CurvePsi((-1.0, 1j, 1.0), math.pi, 0.0)
        with pytest.raises(GeometryError):
            frac_differint_curve(LOR, 0.5, 2.0, through_pole, PsiSide.PLUS)

    @pytest.mark.parametrize("z0", [5j, 0.5 + 0.3j])
    def test_off_curve_point_rejected(self, z0: complex) -> None:
        with pytest.raises(GeometryError):
            frac_differint_curve(LOR, 0.5, z0, AXIS, PsiSide.PLUS)

    def test_vertex_point_rejected(self) -> None:
        with pytest.raises(GeometryError):
            frac_differint_curve(LOR, 0.5, 0.5 + 0.5j, BENT, PsiSide.PLUS)


class TestSerialization:
    def test_round_trip(self) -> None:
        assert curve_psi_from_json(curve_psi_to_json(BENT)) == BENT

    @pytest.mark.parametrize(
        "text", ['{"vertices": "x"}', "{not json", '{"theta1": 0.0}']
    )
    def test_malformed_rejected(self, text: str) -> None:
        with pytest.raises(InputError):
            curve_psi_from_json(text)
