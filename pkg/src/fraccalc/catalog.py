r"""Catalog of ready-made functions for the operator and the CLI.

Spec strings accepted by :func:`make_function`:

- ``exp(<c>)`` — :math:`e^{cx}` with a real or complex rate ``c``
  (e.g. ``exp(2)``, ``exp(0.5)``, ``exp(1+0.5i)``).
- ``lorentzian`` — :math:`1/(1+x^2)`.
- ``gaussian`` — :math:`e^{-x^2}`.
- ``rational:<json>`` or ``rational:@<path>`` — a finite sum
  :math:`\sum_k a_k (x - z_k)^{-(n_k+1)}` given as pole-form JSON.
- ``expr:<expression>`` — anything in the expression language
  (see :mod:`fraccalc.expressions`); derivatives are symbolic.

Every factory returns a :class:`~fraccalc.realline.RealFunction` whose
``derivs`` callables are exact, so composition and by-parts routes keep
full accuracy.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import InputError
from .expressions import differentiate, evaluate, parse_expression
from .realline import RealFunction

__all__ = [
    "exp_function",
    "lorentzian_function",
    "gaussian_function",
    "rational_function",
    "expression_function",
    "make_function",
]


def _parse_rate(text: str) -> complex:
    """Parse ``c`` from forms like ``2``, ``-0.5``, ``1+0.5i``, ``2i``."""
    cleaned = text.strip().replace(" ", "").replace("i", "j").replace("−", "-")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise InputError(f"cannot parse exponential rate {text!r}") from exc


def exp_function(c: complex | float | str) -> RealFunction:
    r"""The exponential :math:`e^{cx}`; every derivative is :math:`c^k e^{cx}`."""
    rate = _parse_rate(c) if isinstance(c, str) else complex(c)

    def value(x: np.ndarray, _c: complex = rate) -> np.ndarray:
        return np.exp(_c * np.asarray(x, dtype=complex))

    def derivs(k: int, _c: complex = rate) -> Callable[[np.ndarray], np.ndarray]:
        def dk(x: np.ndarray) -> np.ndarray:
            return _c**k * np.exp(_c * np.asarray(x, dtype=complex))

        return dk

    if rate.real > 0:
        hint: tuple[float, float] | None = (-math.inf, math.inf)
    elif rate.real < 0:
        hint = (math.inf, -math.inf)
    else:
        hint = None  # purely oscillatory: let sampling decide per order
    text = f"{rate.real:g}" if rate.imag == 0 else f"{rate.real:g}{rate.imag:+g}i"
    return RealFunction(value=value, derivs=derivs, growth_hint=hint, name=f"exp({text})")


def lorentzian_function() -> RealFunction:
    r"""The Lorentzian :math:`1/(1+x^2)` with exact partial-fraction derivatives.

    With :math:`f(x) = \tfrac{i/2}{x+i} - \tfrac{i/2}{x-i}` the k-th
    derivative is :math:`(-1)^k k! \left[\tfrac{i/2}{(x+i)^{k+1}} -
    \tfrac{i/2}{(x-i)^{k+1}}\right]` (real for real x).
    """

    def value(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return 1.0 / (1.0 + x * x)

    def derivs(k: int) -> Callable[[np.ndarray], np.ndarray]:
        coeff = 0.5j * math.factorial(k) * (-1.0) ** k

        def dk(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=complex)
            return coeff * ((x + 1j) ** -(k + 1) - (x - 1j) ** -(k + 1))

        return dk

    return RealFunction(
        value=value,
        derivs=derivs,
        growth_hint=None,  # decays like |x|^{-2}; sampling resolves each order
        poles=(1j, -1j),
        name="lorentzian",
    )


def gaussian_function() -> RealFunction:
    r"""The Gaussian :math:`e^{-x^2}`; derivatives via the Hermite recurrence.

    :math:`f^{(k)}(x) = (-1)^k H_k(x) e^{-x^2}` with
    :math:`H_{k+1}(x) = 2x H_k(x) - 2k H_{k-1}(x)`.
    """

    def value(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return np.exp(-x * x)

    def derivs(k: int) -> Callable[[np.ndarray], np.ndarray]:
        def dk(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=complex)
            h_prev = np.ones_like(x)
            h = 2.0 * x if k >= 1 else h_prev
            for j in range(1, k):
                h, h_prev = 2.0 * x * h - 2.0 * j * h_prev, h
            return (-1.0) ** k * h * np.exp(-x * x)

        return dk

    return RealFunction(
        value=value,
        derivs=derivs,
        growth_hint=(-math.inf, -math.inf),
        name="gaussian",
    )


def rational_function(spec: str | dict) -> RealFunction:
    r"""A pole-form rational :math:`\sum_k a_k (x-z_k)^{-(n_k+1)}` from JSON.

    Accepts a JSON string, an ``@<path>`` reference, or an already-decoded
    dict shaped like ``{"terms": [{"a": [re, im], "z": [re, im], "n": 0}]}``.
    """
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid pole-form JSON: {exc}") from exc
    else:
        data = spec
    try:
        terms = tuple(
            (complex(t["a"][0], t["a"][1]), complex(t["z"][0], t["z"][1]), int(t["n"]))
            for t in data["terms"]
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed pole-form JSON: {exc!r}") from exc
    if not terms:
        raise InputError("pole form must have at least one term")
    for _, _, n in terms:
        if n < 0:
            raise InputError("pole orders n must be non-negative")

    def value(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        out = np.zeros_like(x)
        for a, z, n in terms:
            out = out + a * (x - z) ** -(n + 1)
        return out

    def derivs(k: int) -> Callable[[np.ndarray], np.ndarray]:
        def dk(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=complex)
            out = np.zeros_like(x)
            for a, z, n in terms:
                coeff = (-1.0) ** k * math.factorial(n + k) / math.factorial(n)
                out = out + a * coeff * (x - z) ** -(n + 1 + k)
            return out

        return dk

    return RealFunction(
        value=value,
        derivs=derivs,
        growth_hint=None,
        poles=tuple(z for _, z, _ in terms),
        name="rational",
    )


def expression_function(text: str) -> RealFunction:
    """Build a function from the expression language with symbolic derivatives."""
    ast = parse_expression(text)
    cache = {0: ast}

    def value(x: np.ndarray) -> np.ndarray:
        return evaluate(ast, x)

    def derivs(k: int) -> Callable[[np.ndarray], np.ndarray]:
        top = max(cache)
        while top < k:
            cache[top + 1] = differentiate(cache[top])
            top += 1
        node = cache[k]

        def dk(x: np.ndarray) -> np.ndarray:
            return evaluate(node, x)

        return dk

    return RealFunction(value=value, derivs=derivs, growth_hint=None, name=f"expr:{text}")


def make_function(spec: str) -> RealFunction:
    """Resolve a catalog spec string (see module docstring) to a function."""
    text = spec.strip()
    if text.startswith("exp(") and text.endswith(")"):
        return exp_function(text[4:-1])
    if text == "lorentzian":
        return lorentzian_function()
    if text == "gaussian":
        return gaussian_function()
    if text.startswith("rational:"):
        return rational_function(text[len("rational:") :])
    if text.startswith("expr:"):
        return expression_function(text[len("expr:") :])
    raise InputError(
        f"unknown function spec {spec!r}; expected exp(c), lorentzian, gaussian, "
        "rational:<json|@path>, or expr:<expression>"
    )
