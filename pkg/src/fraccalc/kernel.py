r"""The regularized one-sided kernel and its zero-regularization limit.

The operator family D±^α acts by convolution against the kernel

    E±^α(w, ε) = ((−1)^{α+1} Γ(α+1) / 2iπ) · (1/(w+iε)^{α+1} − 1/(w−iε)^{α+1}),

with the complex powers taken on the side's cut ((0, +∞) for the plus
kernel, (0, −∞) for the minus kernel) and (−1)^{α+1} the default-branch
unit phase.  At α = 0 this is the Poisson kernel ε/(π(w²+ε²)), a delta
family; differentiating in w raises α by one.

As ε → 0 the kernel becomes one-sided:

    D₊^α(w) = Γ(α+1) sin((α+1)π)/π · w^{−(α+1)}            for w > 0, else 0,
    D₋^α(w) = −Γ(α+1) sin((α+1)π)/π · e^{iπ(α+1)} |w|^{−(α+1)} for w < 0, else 0,

(default unit-phase branch; branch n multiplies both by exp(2iπnα)).  At
non-negative integer α the limit is a delta derivative rather than a
function, which is reported as :class:`~fraccalc.errors.NotAFunction`.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import gamma as _gamma

from .branchcut import Approach, CutOrientation, UnitPhase, principal_power
from .errors import DomainError, GammaPoleError, InputError, NotAFunction
from .orders import Order, OrderClass, as_order
from .quadrature import QuadratureConfig, integrate_segment

__all__ = ["kernel_eps", "kernel_limit", "delta_moment_check"]


def _gamma_c(z: complex) -> complex:
    """Gamma function for complex argument."""
    return complex(_gamma(complex(z)))


def kernel_eps(
    alpha: "Order | complex | float | str",
    w: float,
    eps: float,
    side: CutOrientation,
    unit: UnitPhase = UnitPhase(0),
) -> complex:
    """The ε-regularized kernel E±^α(w, ε)."""
    a = as_order(alpha)
    if a.klass is OrderClass.NEG_INTEGER:
        raise GammaPoleError("kernel prefactor Gamma(alpha+1) has a pole at negative integers")
    if eps <= 0:
        raise InputError("regularization scale must be positive")
    al = a.alpha
    pref = unit.value(al + 1) * _gamma_c(al + 1) / (2j * math.pi)
    p_up = principal_power(w + 1j * eps, -(al + 1), side, Approach.FROM_ABOVE)
    p_dn = principal_power(w - 1j * eps, -(al + 1), side, Approach.FROM_ABOVE)
    return pref * (p_up - p_dn)


def kernel_limit(
    alpha: "Order | complex | float | str",
    w: float,
    side: CutOrientation,
    unit: UnitPhase = UnitPhase(0),
) -> complex:
    """The one-sided ε → 0 kernel D±^α(w)."""
    a = as_order(alpha)
    if a.klass is OrderClass.NON_NEG_INTEGER:
        raise NotAFunction(
            "the limiting kernel at non-negative integer order is a delta derivative; "
            "use the integer path of the real-line operator"
        )
    if a.klass is OrderClass.NEG_INTEGER:
        raise GammaPoleError("kernel prefactor Gamma(alpha+1) has a pole at negative integers")
    if w == 0:
        raise DomainError("the limiting kernel is singular at w = 0")
    al = a.alpha
    rebranch = cmath.exp(2j * math.pi * unit.n * al)
    coeff = _gamma_c(al + 1) * cmath.sin((al + 1) * math.pi) / math.pi
    if side is CutOrientation.PLUS_AXIS:
        if w < 0:
            return 0j
        return coeff * cmath.exp(-(al + 1) * math.log(w)) * rebranch
    if w > 0:
        return 0j
    return (
        -coeff
        * cmath.exp(1j * math.pi * (al + 1))
        * cmath.exp(-(al + 1) * math.log(abs(w)))
        * rebranch
    )


def delta_moment_check(eps: float, R: float, cfg: QuadratureConfig | None = None) -> float:
    """∫_{−R}^{R} E^0(w, ε) dw — the mass captured by the delta family.

    Analytically (2/π)·arctan(R/ε); computed here by adaptive quadrature of
    the α = 0 kernel as a self-test of both the kernel and the integrator.
    """
    if eps <= 0 or R <= 0:
        raise InputError("eps and R must be positive")
    cfg = cfg or QuadratureConfig()

    def h(pts: np.ndarray) -> np.ndarray:
        w = np.asarray(pts, dtype=complex).real
        return np.array([kernel_eps(0.0, float(v), eps, CutOrientation.PLUS_AXIS) for v in w])

    total = 0j
    cuts = sorted({-R, -10 * eps, -eps, 0.0, eps, 10 * eps, R})
    cuts = [c for c in cuts if -R <= c <= R]
    for a, b in zip(cuts[:-1], cuts[1:]):
        v, _ = integrate_segment(h, a, b, cfg, cfg.abs_tol / 8.0)
        total += v
    return float(total.real)
