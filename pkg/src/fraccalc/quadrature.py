r"""Adaptive quadrature engines for singular, oscillatory, infinite integrals.

The central object is :func:`power_weighted_integral`, the analytic
continuation of

    T(g, γ) = ∫₀^∞ g(u) u^{−γ} du,

defined for Re γ < 1 classically and continued to larger Re γ by subtracting
a Taylor head of ``g`` at 0 on an initial interval [0, u₀]:

    T(g, γ) = Σ_{j≤J} g^{(j)}(0)/j! · u₀^{j+1−γ}/(j+1−γ)
            + ∫₀^{u₀} (g(u) − P_J(u)) u^{−γ} du + ∫_{u₀}^∞ g(u) u^{−γ} du.

The head moments are exact for complex γ, which is what makes complex orders
work: a fixed-exponent endpoint rule (e.g. a Jacobi weight u^{−Δα}) cannot
represent the oscillatory factor u^{−i Im γ}, whereas the split above treats
it exactly where it matters and leaves only smooth integrands to the panels.

Panels are geometric chunks integrated with paired Gauss–Legendre rules
(order ``endpoint_nodes`` and half of it); disagreeing panels are bisected.
Infinite tails are truncated when chunk contributions fall below tolerance
and decrease, with the geometric-ratio bound added to the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, InputError

__all__ = [
    "QuadratureConfig",
    "TailIntegral",
    "power_weighted_integral",
    "integrate_segment",
    "integrate_polyline",
    "geometric_tail",
    "fd_derivative",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the adaptive integrators."""

    rel_tol: float = 1e-8  #: target relative tolerance
    abs_tol: float = 1e-12  #: target absolute tolerance
    truncation_radius: float | None = None  #: fixed tail cutoff; adaptive when None
    max_subdivisions: int = 48  #: bisection depth cap per panel
    endpoint_nodes: int = 32  #: Gauss–Legendre order per panel (paired with half order)

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise InputError("tolerances must be positive")
        if self.endpoint_nodes < 2:
            raise InputError("at least two quadrature nodes are required")


@dataclass(frozen=True)
class TailIntegral:
    """Value and error estimate of a semi-infinite weighted integral."""

    value: complex  #: the integral's value
    est_error: float  #: accumulated quadrature + truncation error estimate


@lru_cache(maxsize=None)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_pair(
    h: Callable[[np.ndarray], np.ndarray], a: complex, b: complex, n: int
) -> tuple[complex, float, float]:
    """∫_a^b h along the straight segment, with an error estimate and scale.

    Uses Gauss–Legendre at orders n and n//2 in a single vectorized call;
    the difference of the two estimates is the error proxy.  The returned
    scale |b−a|·max|h| bounds the roundoff floor of the panel.
    """
    mid = (a + b) / 2.0
    half = (b - a) / 2.0
    x1, w1 = _gl_nodes(n)
    x2, w2 = _gl_nodes(max(2, n // 2))
    pts = np.concatenate([mid + half * x1, mid + half * x2])
    vals = np.asarray(h(pts), dtype=complex)
    v1 = half * complex(np.dot(w1, vals[: x1.size]))
    v2 = half * complex(np.dot(w2, vals[x1.size :]))
    scale = 2.0 * abs(half) * float(np.max(np.abs(vals), initial=0.0))
    return v1, abs(v1 - v2), scale


def integrate_segment(
    h: Callable[[np.ndarray], np.ndarray],
    a: complex,
    b: complex,
    cfg: QuadratureConfig | None = None,
    tol: float | None = None,
    depth: int = 0,
    noise: float = 0.0,
    _budget: list[int] | None = None,
) -> tuple[complex, float]:
    """Adaptive ∫_a^b h dz along a straight segment; returns (value, est_error).

    Never raises on its own: if the subdivision budget runs out the honest
    (possibly large) error estimate is returned for the caller to judge.
    Bisection stops at the larger of the tolerance, the caller-declared
    evaluation ``noise`` of h over the segment (e.g. cancellation noise of a
    Taylor remainder — invisible to the quadrature itself), and the panel's
    own roundoff floor; a global panel budget bounds the work even when
    every stop estimate is wrong.
    """
    cfg = cfg or QuadratureConfig()
    if tol is None:
        tol = cfg.abs_tol
    if _budget is None:
        _budget = [4096]
    v, e, scale = _gl_pair(h, a, b, cfg.endpoint_nodes)
    _budget[0] -= 1
    floor = max(noise, 4e-16 * scale)
    if e <= max(tol, floor) or depth >= cfg.max_subdivisions or _budget[0] <= 0:
        return v, e
    m = (a + b) / 2.0
    v1, e1 = integrate_segment(h, a, m, cfg, tol / 2.0, depth + 1, noise / 2.0, _budget)
    v2, e2 = integrate_segment(h, m, b, cfg, tol / 2.0, depth + 1, noise / 2.0, _budget)
    return v1 + v2, e1 + e2


def integrate_polyline(
    h: Callable[[np.ndarray], np.ndarray],
    points: Sequence[complex],
    cfg: QuadratureConfig | None = None,
    tol: float | None = None,
) -> tuple[complex, float]:
    """Adaptive line integral of ``h`` along a polyline; returns (value, est_error)."""
    cfg = cfg or QuadratureConfig()
    if tol is None:
        tol = cfg.abs_tol
    lengths = [abs(points[i + 1] - points[i]) for i in range(len(points) - 1)]
    total_len = sum(lengths) or 1.0
    value = 0.0 + 0.0j
    err = 0.0
    for i in range(len(points) - 1):
        if lengths[i] == 0.0:
            continue
        v, e = integrate_segment(
            h, points[i], points[i + 1], cfg, tol * lengths[i] / total_len
        )
        value += v
        err += e
    return value, err


def geometric_tail(
    h: Callable[[np.ndarray], np.ndarray],
    start: float,
    cfg: QuadratureConfig | None = None,
    *,
    ratio: float = 2.0,
    tol: float = 1e-12,
    max_chunks: int = 400,
    radius: float | None = None,
) -> tuple[complex, float]:
    """∫_start^∞ h(u) du by geometric chunks [start·r^i, start·r^{i+1}].

    Stops once three consecutive chunk magnitudes decrease below ``tol`` (or
    the optional ``radius`` is reached) and adds the geometric-ratio bound of
    the dropped tail to the error estimate.  Raises
    :class:`ConvergenceError` when the chunk sequence never settles.
    """
    cfg = cfg or QuadratureConfig()
    if start <= 0:
        raise InputError("geometric tails need a positive start")
    if radius is None:
        radius = cfg.truncation_radius
    total = 0.0 + 0.0j
    err = 0.0
    mags: list[float] = []
    left = float(start)
    for _ in range(max_chunks):
        right = left * ratio
        v, e = integrate_segment(h, left, right, cfg, tol / 8.0)
        total += v
        err += e
        mags.append(abs(v))
        settled = (
            len(mags) >= 3
            and mags[-1] < tol
            and mags[-1] <= mags[-2] <= mags[-3]
        )
        if settled or (radius is not None and right >= radius):
            rho = 0.9
            if len(mags) >= 2 and mags[-2] > 0:
                rho = min(0.9, mags[-1] / mags[-2])
            err += mags[-1] * rho / (1.0 - rho)
            return total, err
        left = right
    raise ConvergenceError(
        f"tail integral did not settle within {max_chunks} geometric chunks"
    )


def _chunk_ratio(gamma: complex) -> float:
    """Geometric chunk ratio keeping the u^{−i Im γ} oscillation below half a cycle."""
    g2 = abs(complex(gamma).imag)
    if g2 < 1e-12:
        return 2.0
    return min(2.0, math.exp(math.pi / g2))


def power_weighted_integral(
    g: Callable[[np.ndarray], np.ndarray],
    gamma: complex,
    cfg: QuadratureConfig | None = None,
    *,
    head: Sequence[complex] | None = None,
    head_scale: float = 1.0,
    singular_radius: float | None = None,
    lower: float = 0.0,
) -> TailIntegral:
    r"""Analytic continuation of ∫_lower^∞ g(u) u^{−γ} du (default lower = 0).

    ``head`` supplies the Taylor coefficients g^{(j)}(0) (derivative values,
    not divided by j!).  It is required when Re γ ≥ 1, where the classical
    integral diverges at 0 and only the continued value is defined; with
    Re γ < 1 a supplied head merely accelerates convergence.  ``head_scale``
    bounds the Taylor interval u₀; ``singular_radius`` (distance from 0 to
    the nearest singularity of ``g``) tightens it further.  With
    ``lower > 0`` the head is ignored and the integral is classical.
    """
    cfg = cfg or QuadratureConfig()
    gamma = complex(gamma)
    value = 0.0 + 0.0j
    err = 0.0
    ratio = _chunk_ratio(gamma)

    def weighted(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.asarray(g(u), dtype=complex) * np.exp(-gamma * np.log(u))

    if lower > 0.0:
        tail, tail_err = geometric_tail(
            weighted, lower, cfg, ratio=ratio, tol=cfg.abs_tol
        )
        return TailIntegral(tail, tail_err)

    need = max(0, math.ceil(gamma.real) - 1)
    if need > 0 and (head is None or len(head) < need):
        raise InputError(
            f"Re gamma = {gamma.real:g} needs at least {need} Taylor coefficients of g at 0"
        )

    u0 = float(head_scale)
    if singular_radius is not None:
        u0 = min(u0, 0.5 * float(singular_radius))
    if u0 <= 0:
        raise InputError("head interval must have positive length")

    coeffs = [complex(c) for c in (head or ())]
    if not coeffs and gamma.real > 0:
        # seed a one-term head so the near-0 chunks decay at least linearly
        coeffs = [complex(np.asarray(g(np.asarray([0.0])), dtype=complex)[0])]
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        expo = j + 1 - gamma
        if abs(expo) < 1e-13:
            raise InputError(
                "integer-exponent collision in the continued head; "
                "integer orders must take their dedicated paths"
            )
        value += (c / math.factorial(j)) * np.exp(expo * math.log(u0)) / expo

    if coeffs:
        fact = [math.factorial(j) for j in range(len(coeffs))]

        def remainder(u: np.ndarray) -> np.ndarray:
            u = np.asarray(u, dtype=float)
            gv = np.asarray(g(u), dtype=complex)
            poly = np.zeros_like(gv)
            for j in range(len(coeffs) - 1, -1, -1):
                poly = poly * u + coeffs[j] / fact[j]
            # Horner above builds sum c_j/j! u^j from the top coefficient down
            return (gv - poly) * np.exp(-gamma * np.log(u))

        head_fn = remainder
    else:
        head_fn = weighted

    # descending geometric chunks over (0, u0]
    hi = u0
    mags: list[float] = []
    noise_scale = max((abs(c) for c in coeffs), default=0.0)
    n_coeff = len(coeffs)
    for i in range(400):
        lo = hi / ratio
        chunk_noise = 0.0
        if coeffs:
            # cancellation noise of g − P_J near 0 under the singular weight
            chunk_noise = 1e-16 * noise_scale * (hi - lo) * lo ** (-gamma.real)
        v, e = integrate_segment(head_fn, lo, hi, cfg, cfg.abs_tol / 8.0, noise=chunk_noise)
        value += v
        err += e + chunk_noise
        mags.append(abs(v))
        small = mags[-1] < cfg.abs_tol / 4.0 or (
            coeffs and mags[-1] < 4.0 * chunk_noise
        )
        if len(mags) >= 4 and small and mags[-1] <= mags[-2]:
            rho = min(0.9, mags[-1] / mags[-2] if mags[-2] > 0 else 0.5)
            err += mags[-1] * rho / (1.0 - rho)
            if coeffs:
                # bound on the skipped true remainder ~ u^{n_coeff} g-scale
                expo = n_coeff + 1 - gamma.real
                if expo > 0:
                    err += (
                        noise_scale
                        * lo**expo
                        / (math.factorial(n_coeff) * max(expo, 0.5))
                    )
            break
        hi = lo
    else:
        raise ConvergenceError("head interval never settled; g may be singular at 0")

    tail, tail_err = geometric_tail(weighted, u0, cfg, ratio=ratio, tol=cfg.abs_tol)
    return TailIntegral(value + tail, err + tail_err)


# ---------------------------------------------------------------------------
# Finite differences (fallback when no derivative oracle is supplied)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stencil(k: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Central finite-difference stencil for the k-th derivative, 2m+1 points."""
    offsets = np.arange(-m, m + 1, dtype=float)
    V = np.vander(offsets, increasing=True).T  # row j = offsets**j
    rhs = np.zeros(2 * m + 1)
    rhs[k] = math.factorial(k)
    weights = np.linalg.solve(V, rhs)
    return offsets, weights


def fd_derivative(
    f: Callable[[np.ndarray], np.ndarray], x: float, k: int, scale: float = 1.0
) -> tuple[complex, float]:
    """k-th derivative of ``f`` at ``x`` by Richardson-extrapolated central stencils.

    Returns (value, error estimate).  Accuracy degrades quickly with k; this
    is a fallback for functions with no derivative oracle.
    """
    if k == 0:
        return complex(np.asarray(f(np.asarray([x])), dtype=complex)[0]), 0.0
    m = (k + 1) // 2 + 2
    offsets, weights = _stencil(k, m)
    h = (2.22e-16) ** (1.0 / (k + 6)) * max(scale, 1e-3) * (1.0 + abs(x))

    def estimate(step: float) -> complex:
        pts = x + offsets * step
        vals = np.asarray(f(pts), dtype=complex)
        return complex(np.dot(weights, vals)) / step**k

    d1 = estimate(h)
    d2 = estimate(h / 2.0)
    p = 2 * m - k + 1  # stencil order
    p = max(2, min(p, 8))
    extrap = (2**p * d2 - d1) / (2**p - 1)
    return extrap, abs(d2 - d1) / max(1, 2**p - 1) + 1e-14 * abs(extrap)
