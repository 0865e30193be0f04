r"""Closed-form differintegrals of pole-form functions, with branch bookkeeping.

A pole form is a finite sum

.. math::

    h(z) = \sum_k \frac{a_k}{(z - z_k)^{n_k + 1}},\qquad n_k \ge 0.

For a branch assignment that gives each displacement :math:`w_k = z_0 - z_k`
a phase :math:`\varphi_k + 2\pi m_k` (see :mod:`fraccalc.branchcut`) and a
global unit phase :math:`(-1)^\alpha = e^{i\pi\alpha(2n+1)}`, the order-
:math:`\alpha` differintegral at :math:`z_0` is the finite sum

.. math::

    h^{(\alpha)}(z_0) = (-1)^\alpha \sum_k
        \frac{\Gamma(\alpha + n_k + 1)}{\Gamma(n_k + 1)}\, a_k\,
        \frac{e^{-i(\varphi_k + 2\pi m_k)(\alpha + 1)}}
             {|w_k|^{\alpha + 1}\, w_k^{n_k}}.

The module also carries the Lorentzian family in closed form, the
enumeration of attainable branch values, and the jump a winding adds to a
negative-order primitive.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .branchcut import (
    BranchAssignment,
    CutCurve,
    CutOrientation,
    UnitPhase,
    rule1_phase,
)
from .errors import GammaPoleError, InputError, PoleAtEvaluationPoint
from .orders import Order, OrderClass, as_order

__all__ = [
    "PoleTerm",
    "PoleForm",
    "BranchChoice",
    "side_cut",
    "branch_choice_for_side",
    "closed_frac_deriv",
    "lorentzian_closed",
    "lorentzian_pole_form",
    "branch_value_set",
    "primitive_difference",
    "reflection_residual",
    "pole_form_to_json",
    "pole_form_from_json",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PoleTerm:
    r"""One summand :math:`a\,(z - z_k)^{-(n+1)}`."""

    a: complex  #: amplitude
    z: complex  #: pole location
    n: int = 0  #: extra order; the term's pole has multiplicity n+1

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("pole term order n must be non-negative")


@dataclass(frozen=True)
class PoleForm:
    """A finite sum of pole terms."""

    terms: tuple[PoleTerm, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise InputError("pole form must have at least one term")

    @property
    def poles(self) -> tuple[complex, ...]:
        return tuple(t.z for t in self.terms)


@dataclass(frozen=True)
class BranchChoice:
    """Phases for each pole plus the global unit phase.

    ``assignment`` fixes :math:`\varphi_k` and the winding integers
    :math:`m_k` (per-pole, in pole-form term order); ``unit`` fixes which
    value of :math:`(-1)^\alpha` multiplies the whole sum.
    """

    assignment: BranchAssignment
    unit: UnitPhase = UnitPhase(0)

    def with_windings(self, windings: Iterable[int]) -> "BranchChoice":
        ws = tuple(int(m) for m in windings)
        if len(ws) != len(self.assignment.windings):
            raise InputError("winding count must match the number of poles")
        return BranchChoice(
            BranchAssignment(
                reference_point=self.assignment.reference_point,
                windings=ws,
                phases=self.assignment.phases,
            ),
            self.unit,
        )


def side_cut(z0: complex, orientation: CutOrientation) -> CutCurve:
    r"""The straight branch cut that realizes a real-axis operator at ``z0``.

    The kernel variable is :math:`w = z_0 - z`, so the cut that pins the
    plus-side kernel (phase window anchored at :math:`w > 0`) runs from
    ``z0`` toward :math:`-\infty`, and the minus-side cut runs toward
    :math:`+\infty`.
    """
    angle = math.pi if orientation is CutOrientation.PLUS_AXIS else 0.0
    return CutCurve(branch_point=z0, vertices=(z0,), terminal_angle=angle)


def branch_choice_for_side(
    h: PoleForm,
    z0: complex,
    orientation: CutOrientation,
    unit: UnitPhase = UnitPhase(0),
) -> BranchChoice:
    """Reference branch choice induced by the straight plus/minus cut.

    Straight cuts are handled by the single-window rule (rule 1), which
    also covers poles sitting *on* the cut via the from-above limit — the
    same convention that defines the kernel on the positive real w-axis.
    """
    cut_direction = 0.0 if orientation is CutOrientation.PLUS_AXIS else math.pi
    phases = tuple(rule1_phase(z0, t.z, cut_direction) for t in h.terms)
    z_r = complex(z0) - (1.0 + max(abs(complex(z0) - p) for p in h.poles))
    assignment = BranchAssignment(
        reference_point=z_r, windings=(0,) * len(h.terms), phases=phases
    )
    return BranchChoice(assignment, unit)


def closed_frac_deriv(
    h: PoleForm,
    alpha: complex | float | str | Order,
    z0: complex,
    choice: BranchChoice,
) -> complex:
    r"""Closed-form order-``alpha`` differintegral of a pole form at ``z0``.

    Valid for every order whose per-term gamma factors are finite; orders
    that put :math:`\Gamma(\alpha + n_k + 1)` on a pole (negative-integer
    argument) raise :class:`GammaPoleError` because the corresponding
    primitive leaves the pole-form family (it grows logarithms).
    """
    a = as_order(alpha)
    if len(choice.assignment.phases) != len(h.terms):
        raise InputError("branch choice does not match the pole form")
    total = 0.0j
    for k, term in enumerate(h.terms):
        w = complex(z0) - term.z
        if w == 0.0:
            raise PoleAtEvaluationPoint(f"evaluation point sits on the pole at {term.z}")
        arg = a.alpha + term.n + 1
        if a.alpha2 == 0.0 and float(arg.real).is_integer() and arg.real <= 0:
            raise GammaPoleError(
                f"gamma factor pole at alpha + n + 1 = {arg.real:g} for the pole at {term.z}"
            )
        gamma_ratio = _gamma_complex(arg) / math.gamma(term.n + 1)
        phase = choice.assignment.total(k)
        total += (
            gamma_ratio
            * term.a
            * cmath.exp(-1j * phase * (a.alpha + 1))
            / (abs(w) ** (a.alpha + 1) * w**term.n)
        )
    return choice.unit.value(a.alpha) * total


def _gamma_complex(z: complex) -> complex:
    if z.imag == 0.0:
        x = z.real
        if x.is_integer() and x <= 0:
            raise GammaPoleError(f"gamma pole at {x:g}")
        return complex(math.gamma(x))
    import scipy.special as _sp

    return complex(_sp.gamma(z))


# ---------------------------------------------------------------------------
# Lorentzian family
# ---------------------------------------------------------------------------


def lorentzian_pole_form() -> PoleForm:
    r""":math:`1/(1+x^2) = \tfrac{i/2}{x+i} - \tfrac{i/2}{x-i}` as a pole form."""
    return PoleForm(
        terms=(
            PoleTerm(a=0.5j, z=-1j, n=0),
            PoleTerm(a=-0.5j, z=1j, n=0),
        )
    )


def lorentzian_closed(
    alpha: complex | float | str | Order, x: float, k: int = 0
) -> complex:
    r"""Closed-form order-``alpha`` differintegral of :math:`1/(1+x^2)`.

    .. math::

        f_k^{(\alpha)}(x) = e^{-ik\pi(\alpha+1)}\,\Gamma(\alpha+1)\,
            (1+x^2)^{-(\alpha+1)/2}
            \sin\!\Big[\big(\arcsin\tfrac{x}{\sqrt{1+x^2}}
            + (2k+1)\tfrac{\pi}{2}\big)(\alpha+1)\Big].

    ``k = 0`` is the plus-side operator and ``k = -1`` the minus side;
    other integers pick further branches.  At :math:`\alpha = -1` the
    gamma pole cancels and the formula degenerates to the antiderivative
    :math:`\arctan x + (2k+1)\pi/2`.
    """
    a = as_order(alpha)
    al = a.alpha
    theta = math.asin(x / math.sqrt(1.0 + x * x))
    amp = theta + (2 * k + 1) * math.pi / 2.0
    if a.alpha2 == 0.0 and float(al.real).is_integer() and al.real <= -1:
        if al.real == -1.0:
            return complex(amp)  # the limit: arctan(x) + (2k+1)·pi/2
        raise GammaPoleError(
            f"gamma factor pole at alpha + 1 = {al.real + 1:g}; use an n-fold primitive"
        )
    ap1 = al + 1.0
    return (
        cmath.exp(-1j * k * math.pi * ap1)
        * _gamma_complex(ap1)
        * (1.0 + x * x) ** (-ap1 / 2.0)
        * cmath.sin(amp * ap1)
    )


def reflection_residual(alpha: complex | float | str | Order, x: float) -> float:
    r"""Residual of the reflection identity :math:`f_-(x) = (-1)^\alpha f_+(-x)`.

    Uses the principal unit phase :math:`(-1)^\alpha = e^{i\pi\alpha}`;
    returns :math:`|f_-(x) - e^{i\pi\alpha} f_+(-x)|`.
    """
    a = as_order(alpha)
    lhs = lorentzian_closed(a, x, k=-1)
    rhs = UnitPhase(0).value(a.alpha) * lorentzian_closed(a, -x, k=0)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Branch enumeration
# ---------------------------------------------------------------------------


def branch_value_set(
    h: PoleForm,
    alpha: complex | float | str | Order,
    z0: complex,
    choice: BranchChoice,
    enum_bound: int = 3,
    tol_scale: float = 1e-10,
) -> tuple[complex, ...]:
    r"""Distinct closed-form values over winding vectors in ``[-B, B]^N``.

    Starting from ``choice``'s phases, every per-pole winding vector with
    entries bounded by ``enum_bound`` is evaluated and near-duplicates are
    merged (tolerance ``tol_scale`` times the largest modulus).  For a
    rational order p/q the set is finite — windings act through
    :math:`e^{-2\pi i m \alpha}`, periodic with period q, so with the unit
    phase the full family has at most :math:`q^{N+1}` members.  For
    irrational or complex orders the count grows without bound as
    ``enum_bound`` increases.
    """
    a = as_order(alpha)
    if enum_bound < 1:
        raise InputError("enum_bound must be at least 1")
    n_poles = len(h.terms)
    values: list[complex] = []
    counters = [-enum_bound] * n_poles
    while True:
        c = choice.with_windings(counters)
        values.append(closed_frac_deriv(h, a, z0, c))
        j = 0
        while j < n_poles:
            counters[j] += 1
            if counters[j] <= enum_bound:
                break
            counters[j] = -enum_bound
            j += 1
        else:
            break
        if j == n_poles:
            break
    scale = max(abs(v) for v in values)
    tol = tol_scale * max(scale, 1.0)
    distinct: list[complex] = []
    for v in values:
        if all(abs(v - u) > tol for u in distinct):
            distinct.append(v)
    return tuple(distinct)


def primitive_difference(
    n: int, term: PoleTerm, z0: complex, m: int
) -> complex:
    r"""Jump in the order ``-n`` primitive when a pole's winding shifts by ``m``.

    Adding ``m`` windings to the phase of :math:`w = z_0 - z_p` changes the
    n-fold primitive of :math:`a_p (z - z_p)^{-(n_p+1)}` by a polynomial:

    .. math::

        \Delta_p = \begin{cases}
            0, & n_p \ge n,\\[2pt]
            \dfrac{2\pi i\, m\, a_p\, (z_0 - z_p)^{\,n - n_p - 1}}
                  {(n - n_p - 1)!\; n_p!}, & n_p < n.
        \end{cases}
    """
    if n < 1:
        raise InputError("primitive order n must be a positive integer")
    if term.n >= n:
        return 0.0j
    power = n - term.n - 1
    return (
        2j
        * math.pi
        * m
        * term.a
        * (complex(z0) - term.z) ** power
        / (math.factorial(power) * math.factorial(term.n))
    )


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def pole_form_to_json(h: PoleForm) -> str:
    """Serialize to ``{"terms": [{"a": [re, im], "z": [re, im], "n": int}]}``."""
    return json.dumps(
        {
            "terms": [
                {
                    "a": [t.a.real, t.a.imag],
                    "z": [t.z.real, t.z.imag],
                    "n": t.n,
                }
                for t in h.terms
            ]
        }
    )


def pole_form_from_json(text: str | dict) -> PoleForm:
    """Inverse of :func:`pole_form_to_json`; accepts a string, dict, or @path."""
    if isinstance(text, str):
        raw = text.strip()
        if raw.startswith("@"):
            raw = Path(raw[1:]).read_text(encoding="utf-8")
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid pole-form JSON: {exc}") from exc
    else:
        data = text
    try:
        terms = tuple(
            PoleTerm(
                a=complex(t["a"][0], t["a"][1]),
                z=complex(t["z"][0], t["z"][1]),
                n=int(t["n"]),
            )
            for t in data["terms"]
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed pole-form JSON: {exc!r}") from exc
    return PoleForm(terms=terms)
