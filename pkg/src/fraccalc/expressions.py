r"""A tiny expression language: parsing, printing, evaluation, derivatives.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' factor)?          # right-associative
    base   := number | 'x' | 'exp' '(' expr ')' | '(' expr ')' | '-' base

Unary minus binds at the ``base`` level, tighter than '^': ``-x^2`` parses
as ``(-x)^2``.  Both ASCII ``-`` and U+2212 are accepted.  Evaluation is
complex-valued and vectorized; powers take the principal branch.
Differentiation is symbolic; ``x^x``-style powers produce an internal
logarithm node that evaluates fine but lies outside the input grammar.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ParseError

__all__ = [
    "Node",
    "Num",
    "Var",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Neg",
    "Exp",
    "Log",
    "parse_expression",
    "to_text",
    "evaluate",
    "differentiate",
]


class Node:
    """Base class for expression AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Num(Node):
    value: float | complex  #: pure-imaginary literals carry an ``i`` suffix


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Add(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Sub(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Mul(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Div(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Pow(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Neg(Node):
    a: Node


@dataclass(frozen=True)
class Exp(Node):
    a: Node


@dataclass(frozen=True)
class Log(Node):
    """Natural logarithm; produced by differentiation only, not parseable."""

    a: Node


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_NUMBER_RE = re.compile(r"(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")
_MINUS_CHARS = "-−"


@dataclass(frozen=True)
class _Token:
    kind: str  #: one of number x exp ( ) + - * / ^ end
    text: str
    offset: int  #: character offset into the source


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _MINUS_CHARS:
            tokens.append(_Token("-", "-", i))
            i += 1
            continue
        if ch in "+*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            end = m.end()
            literal = m.group(0)
            if end < n and text[end] == "i":  # imaginary suffix
                literal += "i"
                end += 1
            tokens.append(_Token("number", literal, i))
            i = end
            continue
        if text.startswith("exp", i):
            tokens.append(_Token("exp", "exp", i))
            i += 3
            continue
        if ch == "x":
            tokens.append(_Token("x", "x", i))
            i += 1
            continue
        raise ParseError(
            f"unexpected character {ch!r}", offset=i,
            expected=("number", "x", "exp", "(", ")", "+", "-", "*", "/", "^"),
        )
    tokens.append(_Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent)
# ---------------------------------------------------------------------------

_BASE_STARTERS = ("number", "x", "exp", "(", "-")


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str) -> _Token:
        tok = self.current
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}", offset=tok.offset, expected=(kind,)
            )
        return self._advance()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.current
        if tok.kind != "end":
            raise ParseError(
                f"unexpected trailing input {tok.text!r}",
                offset=tok.offset,
                expected=("+", "-", "*", "/", "^", "end"),
            )
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self._advance()
            rhs = self.term()
            node = Add(node, rhs) if op.kind == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.kind in ("*", "/"):
            op = self._advance()
            rhs = self.factor()
            node = Mul(node, rhs) if op.kind == "*" else Div(node, rhs)
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.current.kind == "^":
            self._advance()
            exponent = self.factor()  # right-associative
            node = Pow(node, exponent)
        return node

    def base(self) -> Node:
        tok = self.current
        if tok.kind == "number":
            self._advance()
            if tok.text.endswith("i"):
                return Num(complex(0.0, float(tok.text[:-1])))
            return Num(float(tok.text))
        if tok.kind == "x":
            self._advance()
            return Var()
        if tok.kind == "exp":
            self._advance()
            self._expect("(")
            inner = self.expr()
            self._expect(")")
            return Exp(inner)
        if tok.kind == "(":
            self._advance()
            inner = self.expr()
            self._expect(")")
            return inner
        if tok.kind == "-":
            self._advance()
            return Neg(self.base())
        raise ParseError(
            "expected a value", offset=tok.offset, expected=_BASE_STARTERS
        )


def parse_expression(text: str) -> Node:
    """Parse an expression into its AST; raise :class:`ParseError` with offset."""
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

# unary minus binds tighter than '^' (base := '-' base), hence neg > pow
_PREC = {"add": 1, "mul": 2, "pow": 3, "neg": 4, "atom": 5}


def _fmt_float(v: float) -> str:
    return repr(v) if v % 1 else str(int(v))


def _print(node: Node) -> tuple[str, int]:
    if isinstance(node, Num):
        v = node.value
        if isinstance(v, complex):
            if v.imag == 0.0:
                return _fmt_float(v.real), _PREC["atom"]
            if v.real == 0.0:
                return f"{_fmt_float(v.imag)}i", _PREC["atom"]
            # mixed literals only arise from constant folding; print a
            # parseable compound and mark it atomic via the parentheses
            return f"({_fmt_float(v.real)} + {_fmt_float(v.imag)}i)", _PREC["atom"]
        return _fmt_float(v), _PREC["atom"]
    if isinstance(node, Var):
        return "x", _PREC["atom"]
    if isinstance(node, Exp):
        inner, _ = _print(node.a)
        return f"exp({inner})", _PREC["atom"]
    if isinstance(node, Log):
        inner, _ = _print(node.a)
        return f"log({inner})", _PREC["atom"]
    if isinstance(node, Neg):
        inner, p = _print(node.a)
        if p < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}", _PREC["neg"]
    if isinstance(node, (Add, Sub)):
        left, pl = _print(node.a)
        right, pr = _print(node.b)
        if pl < _PREC["add"]:
            left = f"({left})"
        if pr <= _PREC["add"]:
            right = f"({right})"
        op = "+" if isinstance(node, Add) else "-"
        return f"{left} {op} {right}", _PREC["add"]
    if isinstance(node, (Mul, Div)):
        left, pl = _print(node.a)
        right, pr = _print(node.b)
        if pl < _PREC["mul"]:
            left = f"({left})"
        if pr <= _PREC["mul"]:
            right = f"({right})"
        op = "*" if isinstance(node, Mul) else "/"
        return f"{left}{op}{right}", _PREC["mul"]
    if isinstance(node, Pow):
        left, pl = _print(node.a)
        right, pr = _print(node.b)
        if pl < _PREC["atom"]:  # bases tighter than '^' need parens ((-x)^2 etc.)
            left = f"({left})"
        if pr < _PREC["pow"]:
            right = f"({right})"
        return f"{left}^{right}", _PREC["pow"]
    raise TypeError(f"unknown node {node!r}")


def to_text(node: Node) -> str:
    """Render an AST back to the expression language (logs print as log(...))."""
    return _print(node)[0]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(node: Node, x: np.ndarray) -> np.ndarray:
    """Evaluate on a numpy array (complex-safe, principal branches)."""
    x = np.asarray(x, dtype=complex)
    with np.errstate(all="ignore"):
        return _eval(node, x)


def _eval(node: Node, x: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.full_like(x, complex(node.value))
    if isinstance(node, Var):
        return x
    if isinstance(node, Add):
        return _eval(node.a, x) + _eval(node.b, x)
    if isinstance(node, Sub):
        return _eval(node.a, x) - _eval(node.b, x)
    if isinstance(node, Mul):
        return _eval(node.a, x) * _eval(node.b, x)
    if isinstance(node, Div):
        return _eval(node.a, x) / _eval(node.b, x)
    if isinstance(node, Pow):
        return np.power(_eval(node.a, x), _eval(node.b, x))
    if isinstance(node, Neg):
        return -_eval(node.a, x)
    if isinstance(node, Exp):
        return np.exp(_eval(node.a, x))
    if isinstance(node, Log):
        return np.log(_eval(node.a, x))
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Symbolic differentiation (with light constant folding)
# ---------------------------------------------------------------------------


def _is_num(node: Node, value: float | None = None) -> bool:
    return isinstance(node, Num) and (value is None or node.value == value)


def _add(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value + b.value)
    return Add(a, b)


def _sub(a: Node, b: Node) -> Node:
    if _is_num(b, 0.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value - b.value)
    if _is_num(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _mul(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value * b.value)
    return Mul(a, b)


def _div(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0):
        return Num(0.0)
    if _is_num(b, 1.0):
        return a
    return Div(a, b)


def _neg(a: Node) -> Node:
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def _pow(a: Node, b: Node) -> Node:
    if _is_num(b, 1.0):
        return a
    if _is_num(b, 0.0):
        return Num(1.0)
    return Pow(a, b)


def differentiate(node: Node) -> Node:
    """Symbolic d/dx with constant folding; exact for every grammar node."""
    if isinstance(node, Num):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0)
    if isinstance(node, Add):
        return _add(differentiate(node.a), differentiate(node.b))
    if isinstance(node, Sub):
        return _sub(differentiate(node.a), differentiate(node.b))
    if isinstance(node, Mul):
        return _add(
            _mul(differentiate(node.a), node.b), _mul(node.a, differentiate(node.b))
        )
    if isinstance(node, Div):
        num = _sub(
            _mul(differentiate(node.a), node.b), _mul(node.a, differentiate(node.b))
        )
        return _div(num, _pow(node.b, Num(2.0)))
    if isinstance(node, Neg):
        return _neg(differentiate(node.a))
    if isinstance(node, Exp):
        return _mul(Exp(node.a), differentiate(node.a))
    if isinstance(node, Log):
        return _div(differentiate(node.a), node.a)
    if isinstance(node, Pow):
        base, expo = node.a, node.b
        if isinstance(expo, Num):
            # d a^c = c·a^(c−1)·a'
            return _mul(
                _mul(expo, _pow(base, Num(expo.value - 1.0))), differentiate(base)
            )
        # d a^b = a^b·(b'·log a + b·a'/a)
        bracket = _add(
            _mul(differentiate(expo), Log(base)),
            _mul(expo, _div(differentiate(base), base)),
        )
        return _mul(Pow(base, expo), bracket)
    raise TypeError(f"unknown node {node!r}")
