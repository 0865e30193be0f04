r"""Fractional differintegrals along curves in the complex plane.

A curve ψ runs from :math:`\infty_1 = e^{i\theta_1}\infty` through a finite
polyline to :math:`\infty_2 = e^{i\theta_2}\infty`.  Cutting ψ at an interior
point ``z0`` yields two half-curves; the labeling convention (smaller
``cos θ`` wins, ties broken by smaller ``sin θ``) names them ψ₊ and ψ₋ so
that the real axis reproduces the one-sided real-line operators.  The
order-α differintegral along the side's half-curve is computed from the
regularized endpoint form

.. math::

    -\frac{\Gamma(\alpha+1)\sin((\alpha+1)\pi)}{\pi}
    \left( \int_{\psi_\pm} \frac{f(z+\nu_0\varepsilon)}
    {(z_0-z-\nu_0\varepsilon)^{\alpha+1}}\,dz
    + \frac{f(z_0)}{\alpha\,(-\nu_0\varepsilon)^\alpha} \right),
    \qquad \varepsilon \to 0^+,

with ν₀ the unit tangent at ``z0`` pointing toward the side's endpoint and
the power's phase continued along the half-curve from the anchored window
``Φ0 ∈ (−2π, 0]`` at the endpoint.  The ε → 0 limit is extracted by a
least-squares fit over a geometric ε-sequence against the exponents
``{1, ε^{1−δ}, ε, ε^{2−δ}, ε², ε^{3−δ}}`` that govern the endpoint error.
Integer orders bypass the limit: n ≥ 0 uses the closed Cauchy loop and
n < 0 the n-fold curve primitive.  The same half-curve acts as the branch
cut that induces per-pole phase assignments (:func:`induced_branch_choice`),
tying curve evaluations to the closed pole-form derivatives.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
import scipy.special as _special

from .branchcut import (
    BranchAssignment,
    CutCurve,
    UnitPhase,
    _delta_arg,
    _path_crossings,
    _validate_simple,
)
from .errors import ConvergenceError, GeometryError, InputError
from .orders import Order, as_order
from .poleform import BranchChoice, PoleForm
from .quadrature import QuadratureConfig, geometric_tail, integrate_segment
from .realline import DifferintResult, Method, RealFunction
from .branchcut import rule2_windings

_TWO_PI = 2.0 * math.pi


def _gamma_c(z: complex) -> complex:
    """Complex gamma with scipy's branch handling."""
    return complex(_special.gamma(complex(z)))


# ---------------------------------------------------------------------------
# Curve geometry
# ---------------------------------------------------------------------------


class PsiSide(Enum):
    """Which half-curve of ψ (split at z0) carries the cut."""

    PLUS = "psi_plus"
    MINUS = "psi_minus"


@dataclass(frozen=True)
class SideLabel:
    """A resolved half-curve label: the side and its endpoint direction."""

    side: PsiSide  #: which label
    endpoint_angle: float  #: direction θ of the labeled endpoint ray


@dataclass(frozen=True)
class CurvePsi:
    """A simple curve: polyline vertices plus two endpoint rays to infinity.

    The curve runs from ``e^{iθ1}·∞`` into ``vertices[0]``, through the
    vertices in order, and out from ``vertices[-1]`` along ``e^{iθ2}·∞``.
    A single-vertex curve is two rays joined at the vertex.
    """

    vertices: tuple[complex, ...]  #: finite polyline, traversal order ∞1 → ∞2
    theta1: float  #: angle of the incoming infinity ψ(−∞) = e^{iθ1}∞
    theta2: float  #: angle of the outgoing infinity ψ(+∞) = e^{iθ2}∞

    def __post_init__(self) -> None:
        verts = tuple(complex(v) for v in self.vertices)
        if not verts:
            raise InputError("curve needs at least one finite vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "theta1", float(self.theta1))
        object.__setattr__(self, "theta2", float(self.theta2))
        _validate_simple(self._segments(extent=1.0))

    # -- geometry helpers ----------------------------------------------------

    def _reach(self) -> float:
        v0 = self.vertices[0]
        return max(abs(v - v0) for v in self.vertices)

    def _ray_length(self, extent: float) -> float:
        return 2.0 * (extent + self._reach()) + 1.0

    def _chain(self, extent: float) -> list[complex]:
        """Finite point chain covering the curve out to at least ``extent``."""
        ray = self._ray_length(extent)
        first = self.vertices[0] + cmath.rect(ray, self.theta1)
        last = self.vertices[-1] + cmath.rect(ray, self.theta2)
        return [first, *self.vertices, last]

    def _segments(self, extent: float) -> list[tuple[complex, complex]]:
        pts = self._chain(extent)
        return [
            (pts[i], pts[i + 1]) for i in range(len(pts) - 1) if pts[i] != pts[i + 1]
        ]

    @property
    def arclengths(self) -> tuple[float, ...]:
        """Cumulative parameter of each vertex (t=0 at the first vertex)."""
        out = [0.0]
        for i in range(1, len(self.vertices)):
            out.append(out[-1] + abs(self.vertices[i] - self.vertices[i - 1]))
        return tuple(out)

    def point(self, t: float) -> complex:
        """ψ(t) with arclength parameter: t<0 on the θ1 ray, t>L on the θ2 ray."""
        t = float(t)
        knots = self.arclengths
        if t <= 0.0:
            return self.vertices[0] + cmath.rect(-t, self.theta1)
        if t >= knots[-1]:
            return self.vertices[-1] + cmath.rect(t - knots[-1], self.theta2)
        for i in range(1, len(knots)):
            if t <= knots[i]:
                a, b = self.vertices[i - 1], self.vertices[i]
                frac = (t - knots[i - 1]) / (knots[i] - knots[i - 1])
                return a + (b - a) * frac
        return self.vertices[-1]

    def tangent(self, t: float) -> complex:
        """Unit tangent dψ/dt (undefined exactly at vertices; nearest piece wins)."""
        t = float(t)
        knots = self.arclengths
        if t <= 0.0:
            return -cmath.exp(1j * self.theta1)
        if t >= knots[-1]:
            return cmath.exp(1j * self.theta2)
        for i in range(1, len(knots)):
            if t <= knots[i]:
                d = self.vertices[i] - self.vertices[i - 1]
                return d / abs(d)
        return cmath.exp(1j * self.theta2)

    def normal(self, t: float) -> complex:
        """Unit normal iν(t)."""
        return 1j * self.tangent(t)


def psi_side_labels(psi: CurvePsi) -> tuple[SideLabel, SideLabel]:
    """Assign the ψ₊/ψ₋ labels to the curve's endpoint directions.

    The endpoint with the smaller ``cos θ`` carries ψ₊; on a tie the smaller
    ``sin θ`` wins.  The real axis (θ1 = π, θ2 = 0) therefore puts ψ₊ on the
    ray toward −∞ and ψ₋ toward +∞, matching the real-line plus/minus
    operators, and a vertical line puts ψ₊ on its downward ray.
    """
    t1, t2 = psi.theta1, psi.theta2
    d = (t1 - t2) % _TWO_PI
    if min(d, _TWO_PI - d) < 1e-12:
        raise GeometryError("degenerate curve: endpoint directions coincide")
    c1, c2 = math.cos(t1), math.cos(t2)
    if abs(c1 - c2) <= 1e-12:
        plus_is_first = math.sin(t1) < math.sin(t2)
    else:
        plus_is_first = c1 < c2
    if plus_is_first:
        return (SideLabel(PsiSide.PLUS, t1), SideLabel(PsiSide.MINUS, t2))
    return (SideLabel(PsiSide.PLUS, t2), SideLabel(PsiSide.MINUS, t1))


def _endpoint_angle(psi: CurvePsi, side: PsiSide) -> float:
    labels = psi_side_labels(psi)
    for lab in labels:
        if lab.side is side:
            return lab.endpoint_angle
    raise InputError(f"unknown side {side!r}")


def _scale(psi: CurvePsi, z0: complex) -> float:
    return max(1.0, abs(z0), psi._reach())


def _vertex_directions(psi: CurvePsi, i: int) -> tuple[complex, complex]:
    """Unit tangents arriving at and leaving vertex ``i``."""
    verts = psi.vertices
    if i == 0:
        d_in = -cmath.exp(1j * psi.theta1)
    else:
        d = verts[i] - verts[i - 1]
        d_in = d / abs(d)
    if i == len(verts) - 1:
        d_out = cmath.exp(1j * psi.theta2)
    else:
        d = verts[i + 1] - verts[i]
        d_out = d / abs(d)
    return d_in, d_out


def _locate(psi: CurvePsi, z0: complex) -> tuple[str, int]:
    """Which piece of the curve carries ``z0``.

    Returns ``("ray1", 0)``, ``("seg", i)`` (between vertices i and i+1),
    ``("vertex", i)`` (a straight vertex, where the adjacent directions are
    collinear and the tangent is still single-valued), or ``("ray2", 0)``.
    Genuine kinks and off-curve points are rejected: ν₀ must be well
    defined at ``z0``.
    """
    tol = 1e-9 * _scale(psi, z0)
    for i, v in enumerate(psi.vertices):
        if abs(z0 - v) <= tol:
            d_in, d_out = _vertex_directions(psi, i)
            if abs(d_in - d_out) > 1e-9:
                raise GeometryError(
                    "z0 sits at a polyline kink where the tangent is undefined"
                )
            return ("vertex", i)
    verts = psi.vertices
    for i in range(len(verts) - 1):
        a, b = verts[i], verts[i + 1]
        d = b - a
        t = ((z0 - a) / d).real
        perp = abs(z0 - a - t * d)
        if perp <= tol and 0.0 < t < 1.0:
            return ("seg", i)
    for name, origin, theta in (
        ("ray1", verts[0], psi.theta1),
        ("ray2", verts[-1], psi.theta2),
    ):
        e = cmath.exp(1j * theta)
        s = ((z0 - origin) / e).real
        perp = abs(z0 - origin - s * e)
        if perp <= tol and s > 0.0:
            return (name, 0)
    raise GeometryError("z0 does not lie on the curve")


def _cut_chain(
    psi: CurvePsi, z0: complex, side: PsiSide
) -> tuple[list[complex], float]:
    """The half-curve from ``z0`` toward the side's endpoint.

    Returns the finite waypoint list (starting at ``z0``) and the terminal
    ray angle; the cut continues from the last waypoint along that ray.
    """
    angle = _endpoint_angle(psi, side)
    kind, i = _locate(psi, z0)
    toward_first = abs(cmath.exp(1j * angle) - cmath.exp(1j * psi.theta1)) < 1e-9
    verts = list(psi.vertices)
    if toward_first:
        if kind == "ray1":
            return ([z0], psi.theta1)
        if kind == "seg":
            back = verts[: i + 1]
        elif kind == "vertex":
            back = verts[:i]  # the vertex itself coincides with z0
        else:
            back = verts
        return ([z0, *reversed(back)], psi.theta1)
    if kind == "ray2":
        return ([z0], psi.theta2)
    if kind == "seg":
        fwd = verts[i + 1 :]
    elif kind == "vertex":
        fwd = verts[i + 1 :]
    else:
        fwd = verts
    return ([z0, *fwd], psi.theta2)


def induced_cut(psi: CurvePsi, z0: complex, side: PsiSide) -> CutCurve:
    """The half-curve from ``z0`` toward the side's endpoint, as a branch cut."""
    chain, angle = _cut_chain(psi, z0, side)
    return CutCurve(branch_point=z0, vertices=tuple(chain), terminal_angle=angle)


def induced_branch_choice(
    h: PoleForm,
    z0: complex,
    psi: CurvePsi,
    side: PsiSide,
    unit: UnitPhase = UnitPhase(0),
) -> BranchChoice:
    """Branch choice whose cut is the curve's half from ``z0``.

    The per-pole windings come from the signed-crossing continuation around
    the half-curve, so pole-form closed derivatives with this choice match
    :func:`frac_differint_curve` on the same geometry.
    """
    cut = induced_cut(psi, z0, side)
    reach = max(abs(z0 - p) for p in h.poles)
    z_r = z0 - (1.0 + 2.0 * reach)
    return BranchChoice(rule2_windings(cut, z_r, h.poles), unit)


# ---------------------------------------------------------------------------
# Phase continuation along the half-curve
# ---------------------------------------------------------------------------


def _phase_anchor(nu0: complex) -> float:
    """Kernel phase window Φ0 ∈ (−2π, 0] anchored by the cut direction."""
    theta0 = cmath.phase(-nu0) % _TWO_PI
    if theta0 < 1e-12 or _TWO_PI - theta0 < 1e-12:
        return 0.0
    return theta0 - _TWO_PI


def _chain_phases(w_knots: Sequence[complex], phi0: float) -> list[float]:
    """Continued argument of w at each knot, starting from Φ0 at the first."""
    phases = [phi0]
    for i in range(len(w_knots) - 1):
        phases.append(phases[-1] + _delta_arg(w_knots[i], w_knots[i + 1]))
    return phases


def _power_factory(
    exponent: complex, anchor_w: complex, anchor_phase: float
) -> Callable[[np.ndarray], np.ndarray]:
    """w ↦ w^{−exponent} with the phase continued from a same-piece anchor.

    Valid for w on one straight piece not through the origin: the rotation
    away from the anchor stays below π, so the principal argument of the
    ratio recovers the continued phase exactly.
    """

    def power(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        phase = anchor_phase + np.angle(w / anchor_w)
        return np.exp(-exponent * (np.log(np.abs(w)) + 1j * phase))

    return power


# ---------------------------------------------------------------------------
# Growth along a ray
# ---------------------------------------------------------------------------


def ray_growth_check(
    f: RealFunction, alpha1: float, origin: complex, angle: float
) -> tuple[bool, str]:
    """Sampled check of lim f(z)/z^{α₁} = 0 along ``origin + e^{iθ}·[0,∞)``."""
    e = cmath.exp(1j * angle)
    radii = np.array([2.0**k for k in range(0, 22)])
    pts = origin + radii * e
    with np.errstate(all="ignore"):
        vals = np.abs(np.asarray(f(pts), dtype=complex)) / radii**alpha1
        vals = np.where(np.isfinite(vals), vals, np.inf)
        peak = float(np.max(vals))
        tail = vals[-4:]
        decreasing = bool(np.all(np.isfinite(tail))) and bool(
            np.all(np.diff(tail) <= 0.0)
        )
        small = bool(tail[-1] <= max(1e-3 * peak, 1e-300))
    if decreasing and small:
        return True, f"ray θ={angle:.3f}: decay confirmed (peak {peak:.2e})"
    return False, (
        f"ray θ={angle:.3f}: |f|/R^{alpha1:g} does not vanish "
        f"(tail {tail[-1]:.2e} vs peak {peak:.2e})"
    )


# ---------------------------------------------------------------------------
# The regularized curvilinear differintegral
# ---------------------------------------------------------------------------


def _half_curve_integral(
    g: Callable[[np.ndarray], np.ndarray],
    exponent: complex,
    z0: complex,
    chain: Sequence[complex],
    ray_angle: float,
    shift: complex,
    cfg: QuadratureConfig,
    tol: float,
) -> tuple[complex, float]:
    """∫ g(z+shift)·(z0−z−shift)^{−exponent} dz over the half-curve.

    The phase of the power is continued piece-by-piece from the anchored
    window at the endpoint; the terminal ray is a finite lead-in plus a
    geometric tail.
    """
    nu0 = (chain[1] - chain[0]) / abs(chain[1] - chain[0]) if len(chain) > 1 else (
        cmath.exp(1j * ray_angle)
    )
    phi0 = _phase_anchor(nu0)
    e_ray = cmath.exp(1j * ray_angle)
    lead = max(1.0, abs(chain[-1] - z0))

    knots = list(chain) + [chain[-1] + lead * e_ray]
    w_knots = [z0 - p - shift for p in knots]
    if any(w == 0 for w in w_knots):
        raise GeometryError("phase continuation hits the kernel singularity")
    phases = _chain_phases(w_knots, phi0)

    total = 0.0 + 0.0j
    err = 0.0
    for i in range(len(knots) - 1):
        a, b = knots[i], knots[i + 1]
        d = b - a
        power = _power_factory(exponent, w_knots[i], phases[i])

        def piece(t: np.ndarray, a=a, d=d, power=power) -> np.ndarray:
            z = a + d * t
            return g(z + shift) * power(z0 - z - shift) * d

        v, e = integrate_segment(piece, 0.0, 1.0, cfg, tol)
        total += v
        err += e

    tail_anchor_w = w_knots[-1]
    tail_anchor_phase = phases[-1]
    tail_power = _power_factory(exponent, tail_anchor_w, tail_anchor_phase)

    def ray_piece(u: np.ndarray) -> np.ndarray:
        z = chain[-1] + u * e_ray
        return g(z + shift) * tail_power(z0 - z - shift) * e_ray

    v, e = geometric_tail(ray_piece, lead, cfg, tol=tol)
    total += v
    err += e
    return total, err


_EPS_COUNT = 9  #: ε-sequence length for the endpoint Richardson fit
_EPS_START = 0.05  #: first ε as a fraction of the local geometric scale


def _endpoint_limit(
    eps_values: Sequence[float], samples: Sequence[complex], delta: complex
) -> tuple[complex, float]:
    """Least-squares ε → 0 limit against the endpoint error exponents."""
    exps = np.array([0.0, 1.0 - delta, 1.0, 2.0 - delta, 2.0, 3.0 - delta], dtype=complex)
    eps = np.asarray(eps_values, dtype=float)
    y = np.asarray(samples, dtype=complex)
    basis = eps[:, None] ** exps[None, :]

    def fit(rows: slice) -> complex:
        c, *_ = np.linalg.lstsq(basis[rows], y[rows], rcond=None)
        return complex(c[0])

    full = fit(slice(None))
    drop_first = fit(slice(1, None))
    drop_last = fit(slice(0, -1))
    spread = max(abs(full - drop_first), abs(full - drop_last))
    return full, spread


def _cauchy_derivative(
    f: RealFunction, n: int, z0: complex, cfg: QuadratureConfig
) -> DifferintResult:
    """f^{(n)}(z0) by the closed Cauchy loop (trapezoid, spectrally accurate)."""
    radius = 1.0
    if f.poles:
        nearest = min(abs(z0 - p) for p in f.poles)
        if nearest <= 1e-12:
            raise GeometryError("z0 coincides with a pole of f")
        radius = min(1.0, 0.45 * nearest)

    def loop(m: int) -> complex:
        theta = 2.0 * math.pi * np.arange(m) / m
        z = z0 + radius * np.exp(1j * theta)
        vals = np.asarray(f(z), dtype=complex) * np.exp(-1j * n * theta)
        return math.factorial(n) * radius ** (-n) * complex(np.mean(vals))

    coarse, fine = loop(48), loop(96)
    return DifferintResult(
        fine,
        abs(fine - coarse),
        Method.INTEGER_DERIVATIVE,
        UnitPhase(0),
        f"Cauchy loop, radius {radius:g}",
    )


def nfold_primitive_curve(
    f: RealFunction,
    n: int,
    z0: complex,
    psi: CurvePsi,
    side: PsiSide,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """The n-fold primitive −(1/(n−1)!)∫_{ψ±}(z0−z)^{n−1} f(z) dz.

    The integrand is single-valued (integer power), so no phase bookkeeping
    is needed; curves that trap poles between them differ by the closed
    pole-form jump :func:`fraccalc.poleform.primitive_difference`.
    """
    n = int(n)
    if n < 1:
        raise InputError("the curve primitive needs a positive integer order n")
    cfg = cfg or QuadratureConfig()
    chain, angle = _cut_chain(psi, z0, side)
    e_ray = cmath.exp(1j * angle)
    lead = max(1.0, abs(chain[-1] - z0))
    knots = list(chain) + [chain[-1] + lead * e_ray]

    total = 0.0 + 0.0j
    for i in range(len(knots) - 1):
        a, b = knots[i], knots[i + 1]
        d = b - a

        def piece(t: np.ndarray, a=a, d=d) -> np.ndarray:
            z = a + d * t
            return (z0 - z) ** (n - 1) * np.asarray(f(z), dtype=complex) * d

        v, _ = integrate_segment(piece, 0.0, 1.0, cfg, cfg.abs_tol)
        total += v

    def ray_piece(u: np.ndarray) -> np.ndarray:
        z = chain[-1] + u * e_ray
        return (z0 - z) ** (n - 1) * np.asarray(f(z), dtype=complex) * e_ray

    v, _ = geometric_tail(ray_piece, lead, cfg, tol=max(1e-12, cfg.abs_tol))
    total += v
    return -total / math.factorial(n - 1)


def frac_differint_curve(
    f: RealFunction,
    alpha: "Order | complex | float | str",
    z0: complex,
    psi: CurvePsi,
    side: PsiSide,
    cfg: QuadratureConfig | None = None,
    *,
    unit: UnitPhase = UnitPhase(0),
) -> DifferintResult:
    """Order-α differintegral of ``f`` at ``z0`` along the curve's given side.

    Fractional orders use the regularized endpoint form with the ε → 0
    limit extracted by a least-squares fit over a geometric ε-sequence;
    Re α ≥ 1 is first reduced to Re α ∈ [0, 1) through the derivative
    oracle (the curve semigroup with the integer part).  Integer orders
    bypass the limit: n ≥ 0 evaluates the closed Cauchy loop around ``z0``
    and n < 0 the n-fold curve primitive.
    """
    a = as_order(alpha)
    cfg = cfg or QuadratureConfig()
    z0 = complex(z0)
    _locate(psi, z0)  # vertex / off-curve rejection up front

    if a.is_integer:
        n = round(a.alpha1)
        if n >= 0:
            res = _cauchy_derivative(f, n, z0, cfg)
        else:
            value = nfold_primitive_curve(f, -n, z0, psi, side, cfg)
            res = DifferintResult(
                value, cfg.abs_tol, Method.NFOLD_INTEGRAL, unit, f"{-n}-fold primitive"
            )
        factor = cmath.exp(2j * math.pi * unit.n * a.alpha)
        return DifferintResult(
            res.value * factor, res.est_error, res.method, unit, res.detail
        )

    chain, angle = _cut_chain(psi, z0, side)
    passed, detail = ray_growth_check(f, a.alpha1, chain[-1], angle)
    if not passed:
        raise ConvergenceError(f"growth condition violated: {detail}")

    for p in f.poles:
        d = min(
            abs(complex(p) - z) for z in chain
        )
        if d <= 1e-9 * _scale(psi, z0):
            raise GeometryError("a pole of f lies on the half-curve")

    m = math.floor(a.alpha1) if a.alpha1 >= 1.0 else 0
    g = f
    if m:
        if f.derivs is None:
            raise ConvergenceError(
                "orders with Re alpha >= 1 need a derivative oracle on curves"
            )
        g = RealFunction(
            value=f.deriv(m),
            derivs=lambda j, base=f, m=m: base.deriv(m + j),
            growth_hint=f.growth_hint,
            poles=f.poles,
            name=f"{f.name}-d{m}",
        )
    delta = a.alpha - m
    exponent = delta + 1.0
    pre = -1.0 / _gamma_c(-delta)

    nu0 = (chain[1] - chain[0]) / abs(chain[1] - chain[0]) if len(chain) > 1 else (
        cmath.exp(1j * angle)
    )
    phi0 = _phase_anchor(nu0)

    scale = abs(chain[1] - z0) if len(chain) > 1 else max(1.0, abs(chain[-1] - z0))
    for p in f.poles:
        scale = min(scale, abs(complex(p) - z0))
    scale = min(scale, 1.0)
    eps0 = _EPS_START * scale

    g0 = complex(g(np.array([z0], dtype=complex))[0])
    eps_values: list[float] = []
    samples: list[complex] = []
    quad_err = 0.0
    for j in range(_EPS_COUNT):
        eps = eps0 * 0.5**j
        head = g0 / (delta * cmath.exp(delta * (math.log(eps) + 1j * phi0)))
        tol = max(cfg.abs_tol, 1e-11 * (1.0 + abs(head)))
        integral, e = _half_curve_integral(
            g, exponent, z0, chain, angle, nu0 * eps, cfg, tol
        )
        eps_values.append(eps)
        samples.append(pre * (integral + head))
        quad_err += e
    value, spread = _endpoint_limit(eps_values, samples, delta)
    est = spread + abs(pre) * quad_err / _EPS_COUNT

    factor = cmath.exp(2j * math.pi * unit.n * a.alpha)
    return DifferintResult(
        value * factor,
        est,
        Method.EPS_REGULARIZED,
        unit,
        f"curvilinear regularized endpoint, {_EPS_COUNT}-point fit"
        + (f", reduced by {m} derivatives" if m else ""),
    )


# ---------------------------------------------------------------------------
# Remainder (boundary) integral of the decomposition
# ---------------------------------------------------------------------------


def remainder_integral(
    f: RealFunction,
    alpha: "Order | complex | float | str",
    z0: complex,
    c0: Sequence[complex],
    cut: CutCurve,
    branch: BranchAssignment,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """I(z0) = (Γ(α+1)/2iπ)∫_{C0} f(z)/(z0−z)^{α+1} dz on a boundary polyline.

    The power's phase is continued with the same signed-crossing rule (and
    the same reference ray, recorded in ``branch``) that assigns pole
    phases, so the decomposition built from this remainder is consistent
    with the closed pole sums.  ``c0`` is a polyline arc (closed when the
    first and last points coincide); an arc that crosses the cut has no
    single-branch value and is rejected.

    Orientation: boundary loops enclosing excluded regions (e.g. pole
    disks) traversed counterclockwise make ``unit.value(α) × ΣI(z0)``
    reproduce :func:`frac_differint_curve` when f is analytic between the
    loops and the cut.
    """
    a = as_order(alpha)
    cfg = cfg or QuadratureConfig()
    z0 = complex(z0)
    pts = [complex(p) for p in c0]
    if len(pts) < 2:
        raise InputError("C0 needs at least two points")

    seed = rule2_windings(cut, branch.reference_point, (pts[0],))
    phase0 = seed.total(0)

    extent = max(abs(z0 - p) for p in pts)
    cut_w = [(z0 - s, z0 - t) for s, t in cut._segments(extent=extent)]
    w_pts = [z0 - p for p in pts]
    phases = [phase0]
    for i in range(len(pts) - 1):
        if _path_crossings(w_pts[i], w_pts[i + 1], cut_w) != 0:
            raise GeometryError("C0 crosses the branch cut")
        phases.append(phases[-1] + _delta_arg(w_pts[i], w_pts[i + 1]))

    exponent = a.alpha + 1.0
    total = 0.0 + 0.0j
    for i in range(len(pts) - 1):
        b, d = pts[i], pts[i + 1] - pts[i]
        power = _power_factory(exponent, w_pts[i], phases[i])

        def piece(t: np.ndarray, b=b, d=d, power=power) -> np.ndarray:
            z = b + d * t
            return np.asarray(f(z), dtype=complex) * power(z0 - z) * d

        v, _ = integrate_segment(piece, 0.0, 1.0, cfg, cfg.abs_tol)
        total += v
    return _gamma_c(a.alpha + 1.0) / (2j * math.pi) * total


# ---------------------------------------------------------------------------
# Composition on curves
# ---------------------------------------------------------------------------


def _line_geometry(psi: CurvePsi) -> complex:
    """Unit direction of a straight curve (validates straightness)."""
    e2 = cmath.exp(1j * psi.theta2)
    dirs = [-cmath.exp(1j * psi.theta1)]
    for i in range(len(psi.vertices) - 1):
        d = psi.vertices[i + 1] - psi.vertices[i]
        dirs.append(d / abs(d))
    dirs.append(e2)
    if any(abs(d - e2) > 1e-9 for d in dirs):
        raise InputError("curve composition requires a straight curve")
    return e2


def curve_composition_check(
    f: RealFunction,
    alpha: "Order | complex | float | str",
    beta: "Order | complex | float | str",
    z0: complex,
    psi: CurvePsi,
    side: PsiSide,
    cfg: QuadratureConfig | None = None,
) -> "CompositionReport":
    """Residual of D_ψ^{α+β} f == D_ψ^α (D_ψ^β f) at ``z0`` on a straight ψ.

    The inner differintegral is materialized along the line with the same
    panel/tail scheme used on the real axis, each sample being a genuine
    curve evaluation; the outer operator then runs on the materialized
    function.  Straightness keeps the ε-shifted evaluation points of the
    outer operator on the line, where the materialization is valid.
    """
    from .composition import CompositionReport, materialize_differint
    from .branchcut import CutOrientation

    a, b = as_order(alpha), as_order(beta)
    cfg = cfg or QuadratureConfig()
    z0 = complex(z0)
    e_line = _line_geometry(psi)
    cut_dir = cmath.exp(1j * _endpoint_angle(psi, side))
    toward = (cut_dir / e_line).real
    layout = CutOrientation.PLUS_AXIS if toward < 0 else CutOrientation.MINUS_AXIS

    def point_eval(order: Order, s: float) -> complex:
        return frac_differint_curve(f, order, z0 + s * e_line, psi, side, cfg).value

    g_s = materialize_differint(
        f, b, layout, 0.0, cfg, point_eval=point_eval
    )

    def to_s(z: np.ndarray) -> np.ndarray:
        return ((np.asarray(z, dtype=complex) - z0) / e_line).real

    def value(z: np.ndarray) -> np.ndarray:
        return g_s(to_s(z))

    def derivs(j: int) -> Callable[[np.ndarray], np.ndarray]:
        base = g_s.deriv(j)
        return lambda z: base(to_s(z))

    g_line = RealFunction(
        value=value, derivs=derivs, growth_hint=None, name=g_s.name
    )

    lhs = frac_differint_curve(f, Order(alpha=a.alpha + b.alpha), z0, psi, side, cfg)
    rhs = frac_differint_curve(g_line, a, z0, psi, side, cfg)
    floor = max(abs(complex(g_s(np.array([0.0]))[0])), 1e-10)
    residual = abs(lhs.value - rhs.value) / max(abs(lhs.value), floor)
    return CompositionReport(
        alpha=a,
        beta=b,
        lhs=lhs.value,
        rhs=rhs.value,
        residual=residual,
        notes=f"curvilinear composition on a straight line, side {side.value}",
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def curve_psi_to_json(psi: CurvePsi) -> str:
    """Serialize a curve to its JSON wire format."""
    return json.dumps(
        {
            "vertices": [[v.real, v.imag] for v in psi.vertices],
            "theta1": psi.theta1,
            "theta2": psi.theta2,
        }
    )


def curve_psi_from_json(text: str) -> CurvePsi:
    """Parse the JSON wire format back into a curve."""
    try:
        data = json.loads(text)
        vertices = tuple(complex(p[0], p[1]) for p in data["vertices"])
        return CurvePsi(vertices, float(data["theta1"]), float(data["theta2"]))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise InputError(f"malformed curve JSON: {exc!r}") from exc


def real_axis_curve() -> CurvePsi:
    """The real axis as a curve: ψ₊ toward −∞, ψ₋ toward +∞."""
    return CurvePsi(vertices=(0j,), theta1=math.pi, theta2=0.0)
