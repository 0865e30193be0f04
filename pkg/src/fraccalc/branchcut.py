r"""Phase conventions for multi-valued complex powers and cut geometry.

Everything multi-valued in this library is anchored to one normalization:

    lim_{ε→0⁺} (ξ + iε)^γ = |ξ|^γ   for ξ > 0,

i.e. a point just above the positive real axis carries phase 0.  Phases of
other points are obtained by continuation that never crosses the chosen cut.
For the two straight cuts this gives the argument windows

* cut on (0, +∞): arg ∈ [0, 2π)  (the from-below side of the cut maps to 2π),
* cut on (0, −∞): arg ∈ (−π, π],

and for a cut leaving the origin at angle θ ∈ (0, 2π) the window is
(θ − 2π, θ], with on-cut points taking the from-above value.

Two geometric rules assign phases to pole locations ``z_k`` relative to an
evaluation point ``z0`` (always through the difference ``w = z0 − z_k``):

* ``rule1_phase``: straight cuts — the [0, 2π) angle of ``w``, reduced by 2π
  exactly when the measuring arc from the reference ray would cross the cut.
* ``rule2_windings``: polyline cuts — the phase is continued numerically from
  a base point just above the positive real ``w`` axis, counting signed
  transversal crossings of the cut's image; each crossing contributes ±2π.

The global factor (−1)^α = exp(iα(2n+1)π) is inherently ambiguous; it is
exposed as :class:`UnitPhase` with the caller-chosen branch index n
(default 0) and never silently altered.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError, GeometryError, InputError

__all__ = [
    "CutOrientation",
    "Approach",
    "UnitPhase",
    "CutCurve",
    "BranchAssignment",
    "principal_power",
    "rule1_phase",
    "rule2_windings",
    "cut_curve_from_json",
    "cut_curve_to_json",
]

_TWO_PI = 2.0 * math.pi


class CutOrientation(Enum):
    """The two straight branch cuts used by the one-sided operators."""

    PLUS_AXIS = "plus"  #: cut along (0, +∞); pairs with the D₊ operator
    MINUS_AXIS = "minus"  #: cut along (0, −∞); pairs with the D₋ operator


class Approach(Enum):
    """Which side of the real axis a boundary value is taken from."""

    FROM_ABOVE = "above"
    FROM_BELOW = "below"


@dataclass(frozen=True)
class UnitPhase:
    """The ambiguous global factor (−1)^α = exp(iα(2n+1)π).

    The branch index n is caller-chosen and defaults to 0.  Raising n by one
    multiplies any operator value by exp(2iπα), which is also exactly the
    effect of shifting every winding number by a common amount.
    """

    n: int = 0  #: branch index of the global factor

    def value(self, alpha: complex) -> complex:
        """The factor exp(iα(2n+1)π) for order ``alpha``."""
        return cmath.exp(1j * complex(alpha) * (2 * self.n + 1) * math.pi)

    def rebranch(self, alpha: complex, reference: "UnitPhase | None" = None) -> complex:
        """Multiplier converting a value at branch ``reference`` (default 0) to this branch."""
        base = 0 if reference is None else reference.n
        return cmath.exp(2j * math.pi * (self.n - base) * complex(alpha))


def _arg_02pi(w: complex) -> float:
    """Argument of ``w`` in [0, 2π)."""
    a = math.atan2(w.imag, w.real)
    return a + _TWO_PI if a < 0.0 else a


def principal_power(
    w: complex,
    gamma: complex,
    cut: CutOrientation = CutOrientation.PLUS_AXIS,
    approach: Approach = Approach.FROM_ABOVE,
) -> complex:
    """w^γ with the phase fixed by the cut's argument window.

    On-axis arguments are boundary values selected by ``approach``; off-axis
    arguments take the window's continuous continuation.  The branch point
    ``w == 0`` is rejected.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("0^gamma is a branch point; phase undefined")
    gamma = complex(gamma)
    if w.imag == 0.0:
        if cut is CutOrientation.PLUS_AXIS:
            if w.real > 0:
                arg = 0.0 if approach is Approach.FROM_ABOVE else _TWO_PI
            else:
                arg = math.pi
        else:
            if w.real > 0:
                arg = 0.0
            else:
                arg = math.pi if approach is Approach.FROM_ABOVE else -math.pi
    elif cut is CutOrientation.PLUS_AXIS:
        arg = _arg_02pi(w)
    else:
        arg = math.atan2(w.imag, w.real)
    return cmath.exp(gamma * (math.log(abs(w)) + 1j * arg))


def rule1_phase(z0: complex, z_k: complex, cut_direction: float) -> float:
    """Phase of ``w = z0 − z_k`` relative to a straight cut.

    ``cut_direction`` is the angle (radians) at which the cut leaves the
    origin *in the w-plane*; a cut drawn from ``z0`` at angle θ in the
    z-plane has ``cut_direction = θ + π``.  After normalizing the cut
    direction to [0, 2π), the result lies in (cut_direction − 2π,
    cut_direction]; for ``cut_direction == 0`` the window is [0, 2π).

    The value is the measuring-arc angle: the [0, 2π) argument of ``w``,
    reduced by 2π exactly when the arc from the reference ray (the positive
    real w-axis) to ``w`` would cross the cut.
    """
    w = complex(z0) - complex(z_k)
    if w == 0:
        raise DomainError("pole coincides with the evaluation point")
    a = _arg_02pi(w)
    theta = cut_direction % _TWO_PI
    if 0.0 < theta < a:
        return a - _TWO_PI
    return a


# ---------------------------------------------------------------------------
# Segment geometry
# ---------------------------------------------------------------------------


def _cross(a: complex, b: complex) -> float:
    """2D cross product a × b."""
    return a.real * b.imag - a.imag * b.real


def _segment_contact(
    p: complex, q: complex, a: complex, b: complex
) -> tuple[str, float, float] | None:
    """Classify the contact between closed segments [p,q] and [a,b].

    Returns ``("transversal", t, u)`` for a proper interior crossing
    (parameters on each segment), ``("collinear", lo, hi)`` for segments on
    one line whose overlap along [p,q] spans [lo, hi] with positive length,
    ``("grazing", 0, 0)`` when an endpoint of either segment touches the
    other within tolerance (an ambiguous contact the caller must reject),
    or ``None`` for no contact.

    The test is sign-based: each endpoint is classified by which side of the
    other segment's line it falls on, with a relative tolerance band counted
    as "on the line".  A crossing requires strictly opposite signs on both
    segments, which keeps the answer stable however close the crossing sits
    to either segment's endpoint.
    """
    d1 = q - p
    d2 = b - a
    if d1 == 0 or d2 == 0:
        return None
    span = max(abs(d1), abs(d2), abs(a - p), abs(b - p))
    band = 1e-11 * span

    def side(off: float, direction_len: float) -> int:
        # off = cross(direction, point - base); off/direction_len = distance
        if off > band * direction_len:
            return 1
        if off < -band * direction_len:
            return -1
        return 0

    s_p = side(_cross(d2, p - a), abs(d2))
    s_q = side(_cross(d2, q - a), abs(d2))
    s_a = side(_cross(d1, a - p), abs(d1))
    s_b = side(_cross(d1, b - p), abs(d1))

    if s_p == s_q == s_a == s_b == 0:
        # both segments on one line: measure the overlap in [p,q] parameters
        t0 = ((a - p) / d1).real
        t1 = ((b - p) / d1).real
        lo, hi = max(min(t0, t1), 0.0), min(max(t0, t1), 1.0)
        if hi - lo > 1e-9:
            return ("collinear", lo, hi)
        if hi - lo >= 0.0:
            return ("grazing", 0.0, 0.0)
        return None

    if s_p * s_q < 0 and s_a * s_b < 0:
        op = _cross(d2, p - a)
        oq = _cross(d2, q - a)
        oa = _cross(d1, a - p)
        ob = _cross(d1, b - p)
        t = op / (op - oq)
        u = oa / (oa - ob)
        return ("transversal", min(max(t, 0.0), 1.0), min(max(u, 0.0), 1.0))

    def _touches(w: complex, lo: complex, hi: complex) -> bool:
        return _point_segment_distance(w, lo, hi) <= band

    if (s_p == 0 and _touches(p, a, b)) or (s_q == 0 and _touches(q, a, b)):
        return ("grazing", 0.0, 0.0)
    if (s_a == 0 and _touches(a, p, q)) or (s_b == 0 and _touches(b, p, q)):
        return ("grazing", 0.0, 0.0)
    return None


def _point_segment_distance(w: complex, a: complex, b: complex) -> float:
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(w - a)
    t = max(0.0, min(1.0, ((w - a).real * d.real + (w - a).imag * d.imag) / L2))
    return abs(w - (a + t * d))


def _validate_simple(segments: Sequence[tuple[complex, complex]]) -> None:
    """Reject self-intersecting polylines (consecutive joints excepted)."""
    n = len(segments)
    for i in range(n):
        p, q = segments[i]
        for j in range(i + 1, n):
            a, b = segments[j]
            if j == i + 1:
                # consecutive segments meet at a shared joint; two straight
                # segments with a common endpoint can only overlap further if
                # they backtrack along one line
                d1, d2 = q - p, b - a
                parallel = abs(_cross(d1, d2)) <= 1e-12 * abs(d1) * abs(d2)
                backward = d1.real * d2.real + d1.imag * d2.imag < 0
                if parallel and backward:
                    raise InputError("cut polyline backtracks along itself")
                continue
            if _segment_contact(p, q, a, b) is not None:
                raise InputError("cut polyline is self-intersecting")


# ---------------------------------------------------------------------------
# Polyline cuts and Rule 2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutCurve:
    """A branch cut: polyline from the branch point plus a terminal ray.

    The polyline starts at ``branch_point`` (which must equal the first
    vertex) and continues beyond the last vertex along the direction
    ``terminal_angle`` to infinity.  The polyline must be simple.
    """

    branch_point: complex  #: start of the cut (the evaluation point z0)
    vertices: tuple[complex, ...]  #: polyline vertices, first == branch_point
    terminal_angle: float  #: direction (radians) of the unbounded final ray

    def __post_init__(self) -> None:
        verts = tuple(complex(v) for v in self.vertices)
        if not verts:
            verts = (complex(self.branch_point),)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "branch_point", complex(self.branch_point))
        object.__setattr__(self, "terminal_angle", float(self.terminal_angle))
        if abs(verts[0] - self.branch_point) > 1e-12 * max(1.0, abs(self.branch_point)):
            raise InputError("first cut vertex must equal the branch point")
        _validate_simple(self._segments(extent=1.0))

    def _segments(self, extent: float) -> list[tuple[complex, complex]]:
        """Finite segments covering the cut out to at least radius ``extent``."""
        pts = list(self.vertices)
        reach = max(abs(v - self.branch_point) for v in pts)
        ray_len = 2.0 * (extent + reach) + 1.0
        pts.append(pts[-1] + cmath.rect(ray_len, self.terminal_angle))
        return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1) if pts[i] != pts[i + 1]]


@dataclass(frozen=True)
class BranchAssignment:
    """Per-pole phases and winding integers under a chosen cut.

    The value consumed downstream is always the total angle
    ``phases[k] + 2π·windings[k]``; the split stores the base angle in
    [0, 2π).  The assignment is canonical (the common-shift freedom is fixed
    to zero), so while ``reference_point`` is validated and recorded, every
    admissible choice yields the same phases.
    """

    reference_point: complex  #: validated point on the reference ray
    windings: tuple[int, ...]  #: winding integers m_k
    phases: tuple[float, ...]  #: base angles φ_k ∈ [0, 2π)

    def total(self, k: int) -> float:
        """Total continued angle φ_k + 2π·m_k of pole ``k``."""
        return self.phases[k] + _TWO_PI * self.windings[k]


def _delta_arg(w_from: complex, w_to: complex, depth: int = 0) -> float:
    """Continuous argument increment along the straight segment w_from → w_to."""
    if depth > 60:
        raise GeometryError("phase continuation passes through the branch point")
    d = cmath.phase(w_to / w_from)
    if abs(d) <= 0.5 * math.pi:
        return d
    mid = 0.5 * (w_from + w_to)
    if mid == 0:
        raise GeometryError("phase continuation passes through the branch point")
    return _delta_arg(w_from, mid, depth + 1) + _delta_arg(mid, w_to, depth + 1)


def _path_crossings(
    p: complex, q: complex, cut_segments: Sequence[tuple[complex, complex]]
) -> int:
    """Signed count of transversal crossings of segment [p,q] with the cut.

    The sign is that of the cross product of the path direction with the cut
    direction: a path moving downward across a cut that runs along the
    positive real axis gains +1, i.e. the continued phase jumps from the
    from-above value 0 toward the from-below value 2π.
    """
    total = 0
    d1 = q - p
    for a, b in cut_segments:
        hit = _segment_contact(p, q, a, b)
        if hit is None:
            continue
        kind, t, u = hit
        if kind == "collinear":
            raise GeometryError("measuring path runs along the cut")
        if kind == "grazing":
            raise GeometryError(
                "measuring path grazes a cut endpoint or vertex; perturb the configuration"
            )
        s = _cross(d1, b - a)
        total += 1 if s > 0 else -1
    return total


def _continued_phase(
    waypoints: Sequence[complex],
    start_phase: float,
    cut_segments: Sequence[tuple[complex, complex]],
) -> float:
    phase = start_phase
    for i in range(len(waypoints) - 1):
        p, q = waypoints[i], waypoints[i + 1]
        phase += _delta_arg(p, q)
        phase += _TWO_PI * _path_crossings(p, q, cut_segments)
    return phase


def _route_candidates(p0: complex, w: complex) -> list[list[complex]]:
    """Candidate measuring paths from the base point to ``w``.

    All candidates are homotopically equivalent once cut crossings are
    counted (a loop around the branch point trades ±2π of continuous angle
    against ∓1 cut crossings), so the first one that avoids degenerate
    contacts decides the phase.  The straight segment is offered only when
    it clears the branch point; the perpendicular detours always are.
    """
    cands: list[list[complex]] = []
    if _point_segment_distance(0.0, p0, w) > 1e-6 * min(abs(p0), abs(w)):
        cands.append([p0, w])
    u = (w - p0) / abs(w - p0)
    mid = 0.5 * (p0 + w)
    for side in (1j, -1j):
        detour = mid + side * u * 0.5 * max(abs(p0), abs(w))
        if detour != 0:
            cands.append([p0, detour, w])
    return cands


def rule2_windings(
    cut: CutCurve, z_R: complex, poles: Sequence[complex]
) -> BranchAssignment:
    """Phase/winding assignment of each pole relative to a polyline cut.

    The phase of each ``w_k = z0 − z_k`` is continued from an anchor placed
    a small radius from the branch point, opposite the cut's initial
    direction, and assigned the phase of the window cut tangentially there
    (for an initial w-direction θ that is θ − π, or π when θ = 0); every
    transversal crossing of the cut's w-image along the measuring path then
    contributes ±2π with the sign of the crossing.  On a straight cut this
    reproduces the single-window rule exactly, and in particular the
    reference ray (positive real w-axis, off-cut) always carries phase 0.
    The result is decomposed as φ_k + 2π·m_k with φ_k ∈ [0, 2π).

    ``z_R`` must sit on the reference ray (z0, z0 − ∞); the assignment is
    canonical, so any admissible choice produces identical output.
    """
    z0 = cut.branch_point
    z_R = complex(z_R)
    scale = max(1.0, abs(z0))
    if abs((z_R - z0).imag) > 1e-9 * max(scale, abs(z_R - z0)) or (z_R - z0).real >= 0:
        raise InputError("reference point must lie on the ray from z0 toward -infinity")
    if not poles:
        return BranchAssignment(z_R, (), ())

    w_poles = [z0 - complex(z) for z in poles]
    if any(w == 0 for w in w_poles):
        raise GeometryError("a pole coincides with the branch point")

    extent = max(abs(w) for w in w_poles)
    cut_w = [(z0 - a, z0 - b) for a, b in cut._segments(extent=extent)]

    for w in w_poles:
        if any(
            _point_segment_distance(w, a, b) <= 1e-9 * max(1.0, abs(w))
            for a, b in cut_w
        ):
            raise GeometryError("a pole lies on the cut (within tolerance)")

    # anchor radius: small against every pole, the cut's first leg, and any
    # later cut segment that swings back near the branch point
    first_a, first_b = cut_w[0]
    theta_init = _arg_02pi(first_b - first_a)
    rho = 1e-3 * min(min(abs(w) for w in w_poles), 1.0)
    rho = min(rho, 0.5 * abs(first_b - first_a))
    for a, b in cut_w[1:]:
        d = _point_segment_distance(0.0, a, b)
        if d > 0.0:
            rho = min(rho, 0.5 * d)

    p0 = None
    anchor_angle = 0.0
    for offset in (math.pi, 0.75 * math.pi, 1.25 * math.pi, 0.5 * math.pi, 1.5 * math.pi):
        cand_angle = (theta_init + offset) % _TWO_PI
        cand = cmath.rect(rho, cand_angle)
        if all(_point_segment_distance(cand, a, b) > 0.1 * rho for a, b in cut_w):
            p0, anchor_angle = cand, cand_angle
            break
    if p0 is None:
        raise GeometryError("cannot place a continuation anchor near the branch point")
    start_phase = (
        anchor_angle - _TWO_PI if 0.0 < theta_init < anchor_angle else anchor_angle
    )

    windings: list[int] = []
    phases: list[float] = []
    for w in w_poles:
        total = None
        for waypoints in _route_candidates(p0, w):
            try:
                total = _continued_phase(waypoints, start_phase, cut_w)
                break
            except GeometryError:
                continue
        if total is None:
            raise GeometryError(
                "every measuring path to a pole grazes the cut; perturb the configuration"
            )
        base = total % _TWO_PI
        m = round((total - base) / _TWO_PI)
        if base >= _TWO_PI:  # guard against roundoff at the window edge
            base -= _TWO_PI
            m += 1
        windings.append(int(m))
        phases.append(base)
    return BranchAssignment(z_R, tuple(windings), tuple(phases))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def cut_curve_to_json(cut: CutCurve) -> str:
    """Serialize a cut to its JSON wire format."""
    payload = {
        "branch_point": [cut.branch_point.real, cut.branch_point.imag],
        "vertices": [[v.real, v.imag] for v in cut.vertices],
        "terminal_angle": cut.terminal_angle,
    }
    return json.dumps(payload)


def cut_curve_from_json(text: str) -> CutCurve:
    """Parse ``{"branch_point":[re,im], "vertices":[[re,im],...], "terminal_angle":θ}``."""
    try:
        payload = json.loads(text)
        bp = complex(*payload["branch_point"])
        verts = tuple(complex(re, im) for re, im in payload["vertices"])
        angle = float(payload["terminal_angle"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed cut JSON: {exc}") from exc
    return CutCurve(branch_point=bp, vertices=verts, terminal_angle=angle)
