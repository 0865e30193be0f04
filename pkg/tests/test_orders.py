"""Order literals, the integer/fractional split, and classification."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraccalc.orders import Order, OrderClass, as_order


@pytest.mark.parametrize(
    "literal, expected",
    [
        ("0.5", complex(0.5)),
        ("-1.25", complex(-1.25)),
        ("2", complex(2.0)),
        ("1/2", complex(0.5)),
        ("-3/4", complex(-0.75)),
        ("0.5+0.5i", complex(0.5, 0.5)),
        ("1-2i", complex(1.0, -2.0)),
        ("0.25i", complex(0.0, 0.25)),
    ],
)
def test_literal_values(literal: str, expected: complex) -> None:
    assert as_order(literal).alpha == expected


@pytest.mark.parametrize(
    "value, klass",
    [
        (0, OrderClass.NON_NEG_INTEGER),
        (3, OrderClass.NON_NEG_INTEGER),
        (-2, OrderClass.NEG_INTEGER),
        ("1/2", OrderClass.RATIONAL_PQ),
        ("7/3", OrderClass.RATIONAL_PQ),
        (0.5, OrderClass.OTHER),
        (complex(0.5, 0.5), OrderClass.OTHER),
        ("4/2", OrderClass.NON_NEG_INTEGER),
        ("-6/3", OrderClass.NEG_INTEGER),
    ],
)
def test_classification(value, klass: OrderClass) -> None:
    assert as_order(value).klass is klass


def test_rational_reduction_and_pq() -> None:
    a = as_order("6/4")
    assert (a.p, a.q) == (3, 2)
    assert a.alpha == complex(1.5)
    # a decimal literal is not classified rational even when it looks like one
    assert as_order(1.5).q is None


def test_integer_split_properties() -> None:
    a = as_order(2.75)
    assert a.n == 2
    assert a.dalpha == pytest.approx(0.75)
    assert a.residual == pytest.approx(0.75)
    b = as_order(-0.25)
    assert b.n == -1
    assert b.dalpha == pytest.approx(0.75)
    c = as_order(complex(1.5, -2.0))
    assert c.residual == pytest.approx(complex(0.5, -2.0))
    assert c.alpha2 == -2.0


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "1+", "--2", "nan", "inf"])
def test_bad_literals_raise(bad: str) -> None:
    with pytest.raises(ValueError):
        as_order(bad)


def test_fraction_and_order_inputs() -> None:
    assert as_order(Fraction(1, 3)).klass is OrderClass.RATIONAL_PQ
    assert as_order(Fraction(4, 2)).klass is OrderClass.NON_NEG_INTEGER
    a = as_order("2/5")
    assert as_order(a) is a
    with pytest.raises(ValueError):
        Order(complex(0.5), rational=Fraction(1, 3))


def test_str_round_trip() -> None:
    for literal in ("1/2", "-3/4", "0.5", "2.0"):
        a = as_order(literal)
        assert as_order(str(a)).alpha == a.alpha


@given(st.floats(min_value=-20.0, max_value=20.0, allow_nan=False, allow_infinity=False))
def test_split_reassembles(x: float) -> None:
    a = as_order(x)
    assert a.n + a.dalpha == pytest.approx(a.alpha1)
    assert 0.0 <= a.dalpha < 1.0
    assert a.is_integer == float(x).is_integer()


@given(st.integers(min_value=-40, max_value=40), st.integers(min_value=1, max_value=12))
def test_rational_classification_consistent(p: int, q: int) -> None:
    a = as_order(f"{p}/{q}")
    assert a.alpha == pytest.approx(complex(p / q))
    if (p % q) == 0:
        assert a.klass in (OrderClass.NON_NEG_INTEGER, OrderClass.NEG_INTEGER)
        assert math.floor(p / q) == a.n
    else:
        assert a.klass is OrderClass.RATIONAL_PQ
        assert a.q == Fraction(p, q).denominator
