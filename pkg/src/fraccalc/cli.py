r"""Command-line front end for the fractional-calculus engine.

Commands
--------

- ``eval``             one differintegral value (real line, or along a curve)
- ``table``            grid of values as CSV/JSON, rows computed in parallel
- ``branches``         distinct closed-form branch values of a pole form,
                       with the rational-order count bound
- ``compose-check``    semigroup check D^{a+b} f = D^a (D^b f) at a point
- ``spectral-compare`` FFT-multiplier values against direct quadrature
- ``kernel-dump``      tables of the regularized or limiting kernel
- ``verify``           identity suites: reflection, beta, phase-table, j

Exit codes: 0 success (all checks passed), 1 usage or input error,
2 numeric failure (non-convergence, accuracy loss, domain violations),
3 verification failure.  stdout carries data; every error is also written
to stderr as a single-line JSON diagnostic.  The environment variable
``FRAC_NUM_THREADS`` caps the worker pool used for grid rows; output row
order never depends on scheduling.

The CLI adds no numerics of its own — each code path calls exactly one
library operation and formats its result.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .branchcut import CutOrientation, UnitPhase
from .catalog import make_function
from .composition import (
    HKind,
    beta_identity_suite,
    gamma_reflection,
    j_closed,
    j_numeric,
    phase_table_check,
    verify_composition,
)
from .contour import PsiSide, curve_psi_from_json, frac_differint_curve
from .errors import (
    AccuracyError,
    ConvergenceError,
    FracCalcError,
    InputError,
    ParseError,
)
from .kernel import kernel_eps, kernel_limit
from .orders import Order, as_order
from .poleform import branch_choice_for_side, branch_value_set, pole_form_from_json
from .quadrature import QuadratureConfig
from .realline import RealFunction, frac_differint
from .spectral import (
    DCPolicy,
    SampledGrid,
    SpectralConfig,
    Window,
    fft_frac_deriv,
)

__all__ = ["main"]


# --------------------------------------------------------------------------
# argument plumbing


class _UsageError(Exception):
    """Bad flags or literals; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    """Raises instead of calling sys.exit so main() owns the exit code."""

    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _order_literal(text: str) -> Order:
    """Order from ``0.5``, ``1/2`` (rational classification), or ``a+bi``."""
    try:
        return as_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _complex_literal(text: str) -> complex:
    """Point literal: decimal or ``a+bi`` (ASCII or unicode minus)."""
    cleaned = text.strip().replace(" ", "").replace("−", "-").replace("i", "j")
    try:
        value = complex(cleaned)
    except ValueError as exc:
        raise InputError(f"cannot parse point literal {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InputError(f"non-finite point literal {text!r}")
    return value


def _orientation(side: str) -> CutOrientation:
    return CutOrientation.PLUS_AXIS if side == "plus" else CutOrientation.MINUS_AXIS


def _psi_side(side: str) -> PsiSide:
    return PsiSide.PLUS if side == "plus" else PsiSide.MINUS


def _quad_config(args: argparse.Namespace) -> QuadratureConfig | None:
    rel = getattr(args, "rel_tol", None)
    abs_ = getattr(args, "abs_tol", None)
    if rel is None and abs_ is None:
        return None
    base = QuadratureConfig()
    return QuadratureConfig(
        rel_tol=rel if rel is not None else base.rel_tol,
        abs_tol=abs_ if abs_ is not None else base.abs_tol,
    )


def _worker_count() -> int:
    raw = os.environ.get("FRAC_NUM_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"FRAC_NUM_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("FRAC_NUM_THREADS must be at least 1")
    return n


def _parallel_map(fn: Callable, items: Sequence) -> list:
    """Order-preserving map over a bounded thread pool (or serial)."""
    workers = _worker_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _diagnostic(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def _c_text(z: complex) -> str:
    """Full-precision complex literal with an ``i`` suffix and '.' decimals."""
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _grid_values(args: argparse.Namespace) -> np.ndarray:
    if args.count < 1:
        raise InputError("grid count must be at least 1")
    if not args.min < args.max:
        raise InputError("grid needs min < max")
    return np.linspace(args.min, args.max, args.count)


# --------------------------------------------------------------------------
# eval


def _cmd_eval(args: argparse.Namespace) -> int:
    f = make_function(args.fn)
    cfg = _quad_config(args)
    unit = UnitPhase(args.unit_n)
    point = _complex_literal(args.x) if isinstance(args.x, str) else args.x
    if args.curve is not None:
        psi = curve_psi_from_json(Path(args.curve).read_text(encoding="utf-8"))
        res = frac_differint_curve(
            f, args.alpha, point, psi, _psi_side(args.side), cfg, unit=unit
        )
    else:
        if point.imag != 0.0:
            raise InputError(
                "real-line evaluation needs a real --x; pass --curve for complex points"
            )
        res = frac_differint(f, args.alpha, point.real, _orientation(args.side), cfg, unit=unit)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "value": [res.value.real, res.value.imag],
                    "est_error": res.est_error,
                    "method": res.method.value,
                    "branch_n": res.branch.n,
                    "detail": res.detail,
                }
            )
        )
    else:
        print(f"value: {_c_text(res.value)}")
        print(f"est_error: {res.est_error:.3e}")
        print(f"method: {res.method.value}")
        print(f"branch_n: {res.branch.n}")
        if res.detail:
            print(f"detail: {res.detail}")
    return 0


# --------------------------------------------------------------------------
# table


def _cmd_table(args: argparse.Namespace) -> int:
    f = make_function(args.fn)
    cfg = _quad_config(args)
    unit = UnitPhase(args.unit_n)
    side = _orientation(args.side)
    xs = _grid_values(args)

    def row(x: float) -> tuple:
        res = frac_differint(f, args.alpha, float(x), side, cfg, unit=unit)
        v = complex(res.value)
        return (
            float(x),
            float(v.real),
            float(v.imag),
            float(res.est_error),
            res.method.value,
            res.branch.n,
        )

    rows = _parallel_map(row, [float(x) for x in xs])
    if args.format == "json":
        print(
            json.dumps(
                {
                    "rows": [
                        {
                            "x": r[0],
                            "value": [r[1], r[2]],
                            "est_error": r[3],
                            "method": r[4],
                            "branch_n": r[5],
                        }
                        for r in rows
                    ]
                }
            )
        )
    else:
        print("x,re(value),im(value),est_error,method,branch_n")
        for r in rows:
            print(f"{r[0]!r},{r[1]!r},{r[2]!r},{r[3]!r},{r[4]},{r[5]}")
    return 0


# --------------------------------------------------------------------------
# branches


def _cmd_branches(args: argparse.Namespace) -> int:
    spec = args.poleform
    if not spec.lstrip().startswith(("{", "@")) and Path(spec).exists():
        spec = "@" + spec
    h = pole_form_from_json(spec)
    z0 = _complex_literal(args.z0)
    choice = branch_choice_for_side(h, z0, _orientation(args.side), UnitPhase(args.unit_n))
    values = branch_value_set(h, args.alpha, z0, choice, enum_bound=args.max_winding)
    q = args.alpha.q
    n_terms = len(h.terms)
    bound = q ** (n_terms + 1) if q is not None else None
    within = (len(values) <= bound) if bound is not None else None
    if args.format == "json":
        print(
            json.dumps(
                {
                    "count": len(values),
                    "q": q,
                    "terms": n_terms,
                    "bound": bound,
                    "within_bound": within,
                    "values": [[v.real, v.imag] for v in values],
                }
            )
        )
    else:
        print(f"count: {len(values)}")
        if bound is not None:
            print(f"bound: q^(N+1) = {bound} (q={q}, N={n_terms})")
            print(f"within_bound: {'yes' if within else 'NO'}")
        else:
            print("bound: none (order is not rational; the family is unbounded)")
        for k, v in enumerate(values):
            print(f"value[{k}]: {_c_text(v)}")
    return 0 if within is None or within else 3


# --------------------------------------------------------------------------
# compose-check


def _cmd_compose_check(args: argparse.Namespace) -> int:
    f = make_function(args.fn)
    report = verify_composition(
        f, args.alpha, args.beta, args.x, _orientation(args.side), _quad_config(args)
    )
    passed = report.residual <= args.tol
    if args.format == "json":
        print(
            json.dumps(
                {
                    "alpha": str(report.alpha),
                    "beta": str(report.beta),
                    "lhs": [report.lhs.real, report.lhs.imag],
                    "rhs": [report.rhs.real, report.rhs.imag],
                    "residual": report.residual,
                    "tol": args.tol,
                    "pass": passed,
                    "notes": report.notes,
                }
            )
        )
    else:
        print(f"lhs (single application): {_c_text(report.lhs)}")
        print(f"rhs (composed):           {_c_text(report.rhs)}")
        print(f"residual: {report.residual:.3e} (tol {args.tol:g})")
        print(f"status: {'PASS' if passed else 'FAIL'}")
        if report.notes:
            print(f"notes: {report.notes}")
    return 0 if passed else 3


# --------------------------------------------------------------------------
# spectral-compare


def _cmd_spectral_compare(args: argparse.Namespace) -> int:
    f = make_function(args.fn)
    cfg = _quad_config(args)
    unit = UnitPhase(args.unit_n)
    side = _orientation(args.side)
    xs = _grid_values(args)
    if xs.size < 4:
        raise InputError("spectral comparison needs a grid of at least 4 samples")
    grid = SampledGrid(
        x0=float(xs[0]), dx=float(xs[1] - xs[0]), values=np.asarray(f(xs), dtype=complex)
    )
    spectral_cfg = SpectralConfig(
        dc_policy=DCPolicy(args.dc_policy), window=Window(args.window)
    )
    out = fft_frac_deriv(grid, args.alpha, side, spectral_cfg, unit)

    # compare on the central half of the grid, where wraparound is negligible
    lo, hi = xs.size // 4, (3 * xs.size) // 4
    count = min(args.compare_count, hi - lo)
    idx = sorted({int(round(t)) for t in np.linspace(lo, hi - 1, count)})

    def direct(i: int) -> complex:
        return frac_differint(f, args.alpha, float(xs[i]), side, cfg, unit=unit).value

    direct_vals = [complex(v) for v in _parallel_map(direct, idx)]
    rows = [
        (
            float(xs[i]),
            float(out.values[i].real),
            float(out.values[i].imag),
            d.real,
            d.imag,
            float(abs(out.values[i] - d)),
        )
        for i, d in zip(idx, direct_vals)
    ]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "rows": [
                        {
                            "x": r[0],
                            "spectral": [r[1], r[2]],
                            "direct": [r[3], r[4]],
                            "abs_diff": r[5],
                        }
                        for r in rows
                    ]
                }
            )
        )
    else:
        print("x,re(spectral),im(spectral),re(direct),im(direct),abs_diff")
        for r in rows:
            print(",".join(repr(v) for v in r))
    return 0


# --------------------------------------------------------------------------
# kernel-dump


def _cmd_kernel_dump(args: argparse.Namespace) -> int:
    side = _orientation(args.side)
    unit = UnitPhase(args.unit_n)
    ws = _grid_values(args)

    def value(w: float) -> complex:
        if args.eps is not None:
            return kernel_eps(args.alpha, float(w), args.eps, side, unit)
        return kernel_limit(args.alpha, float(w), side, unit)

    rows = [(float(w), complex(value(float(w)))) for w in ws]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "eps": args.eps,
                    "rows": [{"w": w, "value": [v.real, v.imag]} for w, v in rows],
                }
            )
        )
    else:
        print("w,re(value),im(value)")
        for w, v in rows:
            print(f"{w!r},{v.real!r},{v.imag!r}")
    return 0


# --------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class _SuiteResult:
    name: str
    passed: bool
    lines: tuple[str, ...]


def _suite_reflection() -> _SuiteResult:
    rng = np.random.default_rng(20260817)
    tol = 1e-10
    worst = 0.0
    count = 0
    while count < 50:
        re = float(rng.uniform(-4.0, 4.0))
        if abs(re - round(re)) < 0.05:
            continue
        im = float(rng.uniform(-2.0, 2.0)) if count % 2 else 0.0
        worst = max(worst, gamma_reflection(complex(re, im)))
        count += 1
    ok = worst <= tol
    return _SuiteResult(
        "reflection", ok, (f"50 arguments, max residual {worst:.3e} (tol {tol:g})",)
    )


def _suite_beta() -> _SuiteResult:
    cases = ((0.6, 0.7, 0.0, 1.0), (0.8, 0.3, -0.5, 0.7), (0.55, 0.5, 0.25, 1.5))
    tol_quad, tol_sine = 1e-8, 1e-10
    lines: list[str] = []
    ok = True
    for a, b, x, z in cases:
        rep = beta_identity_suite(a, b, x, z)
        good = (
            rep.quadrature_residual <= tol_quad
            and rep.cosine_residual <= tol_quad
            and rep.sine_residual <= tol_sine
        )
        ok = ok and good
        lines.append(
            f"a={a} b={b} x={x} z={z}: quad {rep.quadrature_residual:.2e}, "
            f"cosine {rep.cosine_residual:.2e}, sine {rep.sine_residual:.2e}"
        )
    lines.append(f"tolerances: quad/cosine {tol_quad:g}, sine {tol_sine:g}")
    return _SuiteResult("beta", ok, tuple(lines))


def _suite_phase_table() -> _SuiteResult:
    a, b, x, z = 0.6, 0.7, 0.3, 1.1
    tol = 1e-3
    worst = 0.0
    for kind_a in HKind:
        for kind_b in HKind:
            rep = phase_table_check(kind_a, kind_b, a, b, x, z)
            worst = max(worst, rep.residual)
    ok = worst <= tol
    return _SuiteResult(
        "phase-table",
        ok,
        (f"16 kernel-product placements, worst residual {worst:.3e} (tol {tol:g})",),
    )


def _suite_j() -> _SuiteResult:
    cases = (
        (0j, 1.0 + 0j, "0.4", "0.35"),
        (0.2 - 0.3j, 1.1 + 0.4j, "0.3", "0.25"),
        (0j, 2j, "1/3", "0.5"),
    )
    tol = 1e-8
    lines: list[str] = []
    ok = True
    for z1, z2, alpha, beta in cases:
        closed = j_closed(z1, z2, alpha, beta)
        res = abs(j_numeric(z1, z2, alpha, beta) - closed) / abs(closed)
        flip = abs(j_numeric(z1, z2, alpha, beta, reverse=True) + closed) / abs(closed)
        good = res <= tol and flip <= tol
        ok = ok and good
        lines.append(
            f"z1={_c_text(z1)} z2={_c_text(z2)} alpha={alpha} beta={beta}: "
            f"residual {res:.2e}, reversed {flip:.2e}"
        )
    # a horizontal line above both singularities avoids their cut rays and
    # does not separate them, so the integral must vanish
    vanish = abs(j_numeric(0j, 1.0 + 0j, "0.4", "0.35", line=(2j, 0.0)))
    ok = ok and vanish <= tol
    lines.append(f"non-separating line: |J| = {vanish:.2e}")
    lines.append(f"tolerance: {tol:g}")
    return _SuiteResult("j", ok, tuple(lines))


_SUITES: dict[str, Callable[[], _SuiteResult]] = {
    "reflection": _suite_reflection,
    "beta": _suite_beta,
    "phase-table": _suite_phase_table,
    "j": _suite_j,
}


def _cmd_verify(args: argparse.Namespace) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    results = [_SUITES[name]() for name in names]
    all_pass = all(r.passed for r in results)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suites": {
                        r.name: {"pass": r.passed, "detail": list(r.lines)} for r in results
                    },
                    "all_pass": all_pass,
                }
            )
        )
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
            for line in r.lines:
                print(f"  {line}")
    return 0 if all_pass else 3


# --------------------------------------------------------------------------
# parser assembly


def _add_tolerances(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float, default=None, help="quadrature relative tolerance")
    p.add_argument("--abs-tol", type=float, default=None, help="quadrature absolute tolerance")


def _add_side_unit(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--side", choices=("plus", "minus"), default="plus", help="cut orientation"
    )
    p.add_argument(
        "--unit-n", type=int, default=0, help="unit-phase branch integer n in (-1)^alpha"
    )


def _add_grid(p: argparse.ArgumentParser, default_count: int) -> None:
    p.add_argument("--min", type=float, required=True, help="grid start")
    p.add_argument("--max", type=float, required=True, help="grid end")
    p.add_argument("--count", type=int, default=default_count, help="number of grid points")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="fraccalc",
        description="Fractional differintegrals: evaluation, branch reports, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="one differintegral value")
    p.add_argument("--fn", required=True, help="function spec (catalog name or expr:<...>)")
    p.add_argument("--alpha", type=_order_literal, required=True, help="order literal")
    p.add_argument("--x", required=True, help="evaluation point (complex with --curve)")
    p.add_argument("--curve", default=None, help="path to curve JSON for the curvilinear operator")
    _add_side_unit(p)
    _add_tolerances(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("table", help="grid of values")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=_order_literal, required=True)
    _add_grid(p, default_count=21)
    _add_side_unit(p)
    _add_tolerances(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("branches", help="distinct branch values of a pole form")
    p.add_argument("--poleform", required=True, help="pole-form JSON (inline, @path, or path)")
    p.add_argument("--alpha", type=_order_literal, required=True)
    p.add_argument("--z0", default="0", help="evaluation point literal")
    p.add_argument("--max-winding", type=int, default=3, help="per-pole winding bound")
    _add_side_unit(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_branches)

    p = sub.add_parser("compose-check", help="semigroup check at a point")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=_order_literal, required=True)
    p.add_argument("--beta", type=_order_literal, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-4, help="pass/fail residual threshold")
    _add_side_unit(p)
    _add_tolerances(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_compose_check)

    p = sub.add_parser("spectral-compare", help="FFT multiplier vs direct quadrature")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=_order_literal, required=True)
    _add_grid(p, default_count=512)
    p.add_argument(
        "--compare-count", type=int, default=17, help="direct evaluations in the central region"
    )
    p.add_argument(
        "--dc-policy",
        choices=tuple(d.value for d in DCPolicy),
        default=DCPolicy.ZERO_DC.value,
    )
    p.add_argument(
        "--window", choices=tuple(w.value for w in Window), default=Window.NONE.value
    )
    _add_side_unit(p)
    _add_tolerances(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=_cmd_spectral_compare)

    p = sub.add_parser("kernel-dump", help="regularized / limiting kernel tables")
    p.add_argument("--alpha", type=_order_literal, required=True)
    p.add_argument(
        "--eps", type=float, default=None, help="regularization scale (omit for the limit kernel)"
    )
    _add_grid(p, default_count=9)
    _add_side_unit(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=_cmd_kernel_dump)

    p = sub.add_parser("verify", help="identity suites")
    p.add_argument(
        "--suite",
        choices=("all",) + tuple(_SUITES),
        default="all",
        help="which identity suite to run",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        _diagnostic("usage", str(exc))
        return 1
    except (InputError, ParseError) as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 1
    except (ConvergenceError, AccuracyError) as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    except FracCalcError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    except (OSError, ValueError) as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
