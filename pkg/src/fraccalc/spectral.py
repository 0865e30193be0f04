r"""FFT-based differintegrals on uniformly sampled grids.

A function sampled on :math:`x_j = x_0 + j\,dx` is pushed through the
discrete Fourier transform; the plus-side operator multiplies mode
:math:`\omega` by the principal power :math:`(i\omega)^\alpha` and the
minus-side operator additionally carries :math:`e^{2\pi i\alpha}` on the
negative-frequency half (their eigenvalues agree on :math:`\omega > 0`).
The spectral route assumes periodic wraparound, so the samples must decay
at both grid ends; a window can enforce this, otherwise non-decaying data
raises :class:`~fraccalc.errors.BoundaryError`.

The zero mode is delicate: :math:`0^\alpha` vanishes for
:math:`\operatorname{Re}\alpha > 0` but blows up for negative orders.
:class:`DCPolicy` decides what happens to a nonzero mean.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .branchcut import CutOrientation, UnitPhase
from .errors import BoundaryError, DCError, InputError
from .orders import Order, as_order

__all__ = [
    "DCPolicy",
    "Window",
    "SpectralConfig",
    "SampledGrid",
    "fft_frac_deriv",
    "grid_to_csv",
    "grid_from_csv",
    "grid_to_json",
    "grid_from_json",
]


class DCPolicy(enum.Enum):
    """What to do with the zero-frequency mode when its power is singular."""

    ZERO_DC = "zero-dc"  #: project the mean out silently
    REQUIRE_ZERO_MEAN = "require-zero-mean"  #: raise unless the mean is negligible
    ERROR = "error"  #: always raise for orders with a singular zero mode


class Window(enum.Enum):
    """Optional taper applied before the transform."""

    NONE = "none"
    EXPONENTIAL = "exponential"  #: smooth exponential roll-off on the outer 15%


@dataclass(frozen=True)
class SpectralConfig:
    dc_policy: DCPolicy = DCPolicy.ZERO_DC
    window: Window = Window.NONE
    boundary_tol: float = 1e-6  #: max edge magnitude relative to the peak
    mean_tol: float = 1e-8  #: REQUIRE_ZERO_MEAN threshold, relative to the peak
    window_fraction: float = 0.15  #: tapered fraction of each grid end


@dataclass(frozen=True)
class SampledGrid:
    """Uniform samples ``values[j] = f(x0 + j*dx)``."""

    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size < 4:
            raise InputError("grid needs a 1-d array of at least 4 samples")
        if not (self.dx > 0.0 and math.isfinite(self.dx)):
            raise InputError("grid spacing dx must be positive and finite")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @classmethod
    def sample(cls, f, x0: float, dx: float, n: int) -> "SampledGrid":
        grid = x0 + dx * np.arange(n)
        return cls(x0=x0, dx=dx, values=np.asarray(f(grid), dtype=complex))


def _exponential_taper(n: int, fraction: float) -> np.ndarray:
    """Smooth taper: 1 in the interior, rolling to 0 at both ends."""
    w = np.ones(n)
    m = max(2, int(round(fraction * n)))
    s = np.linspace(0.0, 1.0, m, endpoint=False)[::-1]  # 1-ish at edge -> 0 inward
    with np.errstate(divide="ignore", over="ignore"):
        edge = np.exp(-(s**2) / np.maximum(1.0 - s**2, 1e-300))
    w[:m] = edge[::-1]
    w[-m:] = edge
    return w


def fft_frac_deriv(
    grid: SampledGrid,
    alpha: complex | float | str | Order,
    side: CutOrientation,
    config: SpectralConfig | None = None,
    unit: UnitPhase = UnitPhase(0),
) -> SampledGrid:
    """Order-``alpha`` differintegral of a sampled function by FFT multiplier.

    Returns a new grid on the same abscissae.  Values near the grid ends
    inherit wraparound error; trust the central region.
    """
    cfg = config or SpectralConfig()
    a = as_order(alpha)
    vals = grid.values
    peak = float(np.max(np.abs(vals)))
    if peak == 0.0:
        return SampledGrid(grid.x0, grid.dx, np.zeros_like(vals))

    edge = max(abs(vals[0]), abs(vals[-1]))
    if edge > cfg.boundary_tol * peak:
        if cfg.window is Window.EXPONENTIAL:
            vals = vals * _exponential_taper(grid.n, cfg.window_fraction)
        else:
            raise BoundaryError(
                f"samples do not decay at the grid ends (edge/peak = {edge / peak:.3e}); "
                "enlarge the grid or enable the exponential window"
            )

    spectrum = np.fft.fft(vals)
    omega = 2.0 * math.pi * np.fft.fftfreq(grid.n, d=grid.dx)

    with np.errstate(all="ignore"):
        mult = np.power(1j * omega, complex(a.alpha))
    if side is CutOrientation.MINUS_AXIS:
        mult = np.where(omega < 0, mult * np.exp(2j * math.pi * complex(a.alpha)), mult)
    mult = mult * unit.rebranch(a.alpha)

    dc = spectrum[0]
    if a.alpha == 0:
        mult[0] = 1.0
    elif a.alpha.real > 0:
        mult[0] = 0.0
    else:
        # 0^alpha is singular: apply the policy to the mean.
        if cfg.dc_policy is DCPolicy.ERROR:
            raise DCError(
                f"order {a.alpha} makes the zero mode singular; remove the mean first"
            )
        if cfg.dc_policy is DCPolicy.REQUIRE_ZERO_MEAN and abs(dc) > cfg.mean_tol * peak * grid.n:
            raise DCError(
                f"mean magnitude {abs(dc) / grid.n:.3e} exceeds the zero-mean tolerance"
            )
        mult[0] = 0.0

    out = np.fft.ifft(spectrum * mult)
    return SampledGrid(grid.x0, grid.dx, out)


# ---------------------------------------------------------------------------
# Interchange formats
# ---------------------------------------------------------------------------


def grid_to_csv(grid: SampledGrid) -> str:
    """CSV with header ``x,re,im`` (locale-independent, '.' decimal point)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "re", "im"])
    for xv, v in zip(grid.x, grid.values):
        writer.writerow([repr(float(xv)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def grid_from_csv(text: str) -> SampledGrid:
    """Parse :func:`grid_to_csv` output; spacing must be uniform."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or [c.strip() for c in rows[0][:3]] != ["x", "re", "im"]:
        raise InputError("CSV must start with an 'x,re,im' header")
    try:
        xs = np.array([float(r[0]) for r in rows[1:]])
        vs = np.array([complex(float(r[1]), float(r[2])) for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise InputError(f"malformed CSV row: {exc}") from exc
    if xs.size < 4:
        raise InputError("grid needs at least 4 samples")
    steps = np.diff(xs)
    dx = float(np.median(steps))
    if dx <= 0 or np.max(np.abs(steps - dx)) > 1e-9 * max(dx, 1.0):
        raise InputError("grid abscissae must be uniformly spaced and increasing")
    return SampledGrid(x0=float(xs[0]), dx=dx, values=vs)


def grid_to_json(grid: SampledGrid) -> str:
    return json.dumps(
        {
            "x0": grid.x0,
            "dx": grid.dx,
            "values": [[v.real, v.imag] for v in grid.values],
        }
    )


def grid_from_json(text: str | dict) -> SampledGrid:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        vals = np.array([complex(re, im) for re, im in data["values"]])
        return SampledGrid(x0=float(data["x0"]), dx=float(data["dx"]), values=vals)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed grid JSON: {exc!r}") from exc
