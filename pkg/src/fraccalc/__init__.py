"""Fractional differintegrals on the real line and along complex curves."""

from __future__ import annotations

from .branchcut import (
    Approach,
    BranchAssignment,
    CutCurve,
    CutOrientation,
    UnitPhase,
    principal_power,
    rule1_phase,
    rule2_windings,
)
from .errors import (
    AccuracyError,
    BoundaryError,
    ConvergenceError,
    DCError,
    DomainError,
    FracCalcError,
    GammaPoleError,
    GeometryError,
    InputError,
    NotAFunction,
    ParseError,
    PoleAtEvaluationPoint,
)
from .catalog import (
    exp_function,
    expression_function,
    gaussian_function,
    lorentzian_function,
    make_function,
    rational_function,
)
from .contour import (
    CurvePsi,
    PsiSide,
    SideLabel,
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
from .composition import (
    BetaSuiteReport,
    CompositionReport,
    HKind,
    PhaseTableReport,
    beta_identity_suite,
    gamma_reflection,
    j_closed,
    j_numeric,
    materialize_differint,
    negative_order_composition,
    phase_table_check,
    verify_composition,
)
from .expressions import differentiate, evaluate, parse_expression, to_text
from .kernel import delta_moment_check, kernel_eps, kernel_limit
from .orders import Order, OrderClass, as_order
from .poleform import (
    BranchChoice,
    PoleForm,
    PoleTerm,
    branch_choice_for_side,
    branch_value_set,
    closed_frac_deriv,
    lorentzian_closed,
    lorentzian_pole_form,
    pole_form_from_json,
    pole_form_to_json,
    primitive_difference,
    reflection_residual,
    side_cut,
)
from .quadrature import QuadratureConfig, power_weighted_integral
from .realline import (
    DifferintResult,
    GrowthReport,
    Method,
    RealFunction,
    derivative_of_integral,
    eps_regularized,
    frac_differint,
    growth_check,
    nfold_integral,
    power_integral,
)
from .spectral import (
    DCPolicy,
    SampledGrid,
    SpectralConfig,
    Window,
    fft_frac_deriv,
    grid_from_csv,
    grid_from_json,
    grid_to_csv,
    grid_to_json,
)

__version__ = "0.1.0"
