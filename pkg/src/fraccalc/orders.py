"""Derivative orders and their integer/fractional classification.

An order α is a complex number written as α = α₁ + iα₂ with the real part
split as α₁ = n + Δα, where n = ⌊α₁⌋ and Δα ∈ [0, 1).  The classification
drives dispatch everywhere else in the library:

* non-negative integers take the ordinary-derivative fast path,
* negative integers take the n-fold-integral path,
* real rationals p/q admit finite branch-value sets of size ≤ q^{N+1},
* everything else ("other") gets the generic fractional treatment.

Rational classification is *never* inferred from a float's bits: it only
happens when the caller passes a :class:`fractions.Fraction` or a ``"p/q"``
string literal, keeping the classification an explicit statement of intent.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = ["OrderClass", "Order", "as_order"]


class OrderClass(Enum):
    """Dispatch classes for derivative orders."""

    NON_NEG_INTEGER = "non-negative-integer"
    NEG_INTEGER = "negative-integer"
    RATIONAL_PQ = "rational-pq"
    OTHER = "other"


_NUMERIC_RE = re.compile(r"^[0-9eEij+.\-() ]+$")


@dataclass(frozen=True)
class Order:
    """A derivative order α with its integer/fractional split.

    Attributes
    ----------
    alpha:
        The order as a complex number.
    rational:
        Exact value when the order was stated as a rational literal, else
        ``None``.  Integer-valued rationals collapse to the integer classes.
    """

    alpha: complex  #: the order α = α₁ + iα₂
    rational: Fraction | None = None  #: exact p/q when explicitly given

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.rational is not None and complex(self.rational) != self.alpha:
            raise ValueError("rational literal disagrees with alpha")

    # -- numeric split -------------------------------------------------
    @property
    def alpha1(self) -> float:
        """Real part α₁."""
        return self.alpha.real

    @property
    def alpha2(self) -> float:
        """Imaginary part α₂."""
        return self.alpha.imag

    @property
    def n(self) -> int:
        """Integer part n = ⌊α₁⌋ (float-rounded so that Δα stays below 1)."""
        m = math.floor(self.alpha1)
        # for alpha1 a hair below an integer, alpha1 - m can round to 1.0
        return m + 1 if self.alpha1 - m >= 1.0 else m

    @property
    def dalpha(self) -> float:
        """Fractional part Δα = α₁ − n ∈ [0, 1)."""
        return max(0.0, self.alpha1 - self.n)

    @property
    def residual(self) -> complex:
        """Complex residual α − n (equals Δα + iα₂)."""
        return self.alpha - self.n

    # -- classification ------------------------------------------------
    @property
    def is_integer(self) -> bool:
        """True when α is an exact real integer."""
        return self.alpha2 == 0.0 and float(self.alpha1).is_integer()

    @property
    def klass(self) -> OrderClass:
        if self.is_integer:
            return (
                OrderClass.NON_NEG_INTEGER if self.alpha1 >= 0 else OrderClass.NEG_INTEGER
            )
        if self.rational is not None and self.alpha2 == 0.0:
            return OrderClass.RATIONAL_PQ
        return OrderClass.OTHER

    @property
    def p(self) -> int | None:
        """Numerator of the reduced rational p/q, when classified rational."""
        if self.klass is OrderClass.RATIONAL_PQ:
            return self.rational.numerator  # type: ignore[union-attr]
        return None

    @property
    def q(self) -> int | None:
        """Denominator (≥ 1) of the reduced rational p/q, when classified rational."""
        if self.klass is OrderClass.RATIONAL_PQ:
            return self.rational.denominator  # type: ignore[union-attr]
        return None

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_value(value: "int | float | complex | Fraction | str | Order") -> "Order":
        """Build an order from a number, Fraction, or string literal.

        Strings accept a decimal (``"0.5"``), a rational ``"p/q"`` (which
        triggers the rational classification), or a complex ``"a+bi"``.
        """
        if isinstance(value, Order):
            return value
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return Order(complex(value))
            return Order(complex(value), rational=value)
        if isinstance(value, (int, float, complex)):
            return Order(complex(value))
        if isinstance(value, str):
            return _order_from_string(value)
        raise TypeError(f"cannot interpret {value!r} as an order")

    def __str__(self) -> str:
        if self.rational is not None:
            return f"{self.rational.numerator}/{self.rational.denominator}"
        if self.alpha2 == 0.0:
            return repr(self.alpha1)
        return f"{self.alpha1}{self.alpha2:+}i"


def _order_from_string(text: str) -> Order:
    s = text.strip()
    if "/" in s:
        try:
            frac = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational order literal {text!r}") from exc
        return Order.from_value(frac)
    if not _NUMERIC_RE.match(s):
        raise ValueError(f"bad order literal {text!r}")
    try:
        z = complex(s.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ValueError(f"bad order literal {text!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite order literal {text!r}")
    return Order(z)


def as_order(value: "int | float | complex | Fraction | str | Order") -> Order:
    """Coerce ``value`` to an :class:`Order` (identity on orders)."""
    return Order.from_value(value)
