"""Closed expression trees with exact symbolic derivatives.

One small grammar serves three surfaces: holomorphic components in the
single variable ``xi``, quaternion field components in ``x, y, z``, and
parametric geometry in ``t`` or ``u, v``.  Supported forms: complex
constants, named variables, ``+ - * /``, integer powers via ``^``, and
the entire functions ``exp`` (plus ``sin``/``cos`` where a caller allows
them).  Division is guarded at evaluation time: a denominator magnitude
below the pole threshold raises :class:`~quatmono.errors.PoleHit`.

Text syntax examples::

    xi^2 + (3+1i)*exp(xi)
    x^2*y - 1i*z
    sin(2*pi*t)

Imaginary literals use the ``i`` suffix (``1i``, ``2.5i``); a bare ``i``
and ``pi`` are predefined constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, PoleHit

POLE_EPS = 1e-12


class Node:
    """Base class for expression tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Node):
    value: complex


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Add(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Sub(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Neg(Node):
    a: Node


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
    base: Node
    exponent: int


@dataclass(frozen=True)
class Func(Node):
    name: str  # "exp" | "sin" | "cos"
    a: Node


_FUNC_EVAL = {"exp": np.exp, "sin": np.sin, "cos": np.cos}


def evaluate(node: Node, env: dict, eps: float = POLE_EPS):
    """Evaluate ``node`` over ``env``; values may be scalars or ndarrays."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Add):
        return evaluate(node.a, env, eps) + evaluate(node.b, env, eps)
    if isinstance(node, Sub):
        return evaluate(node.a, env, eps) - evaluate(node.b, env, eps)
    if isinstance(node, Neg):
        return -evaluate(node.a, env, eps)
    if isinstance(node, Mul):
        return evaluate(node.a, env, eps) * evaluate(node.b, env, eps)
    if isinstance(node, Div):
        den = evaluate(node.b, env, eps)
        if np.min(np.abs(den)) <= eps:
            raise PoleHit("denominator magnitude below pole threshold")
        return evaluate(node.a, env, eps) / den
    if isinstance(node, Pow):
        base = evaluate(node.base, env, eps)
        if node.exponent < 0 and np.min(np.abs(base)) <= eps:
            raise PoleHit("negative power of near-zero base")
        if node.exponent == 0:
            return np.ones_like(base * 1.0j) if isinstance(base, np.ndarray) else 1.0 + 0j
        return base ** node.exponent
    if isinstance(node, Func):
        return _FUNC_EVAL[node.name](evaluate(node.a, env, eps))
    raise TypeError(f"unknown node {node!r}")


# -- smart constructors used by the derivative, to keep trees small --------

def _is_const(node, value=None):
    return isinstance(node, Const) and (value is None or node.value == value)


def _add(a, b):
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def _sub(a, b):
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(a, 0):
        return Neg(b)
    return Sub(a, b)


def _mul(a, b):
    if _is_const(a, 0) or _is_const(b, 0):
        return Const(0)
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_const(a, 0):
        return Const(0)
    if _is_const(b, 1):
        return a
    return Div(a, b)


def _pow(base, n):
    if n == 0:
        return Const(1)
    if n == 1:
        return base
    if _is_const(base):
        return Const(base.value ** n)
    return Pow(base, n)


def derivative(node: Node, var: str) -> Node:
    """Exact symbolic derivative of ``node`` with respect to ``var``."""
    if isinstance(node, Const):
        return Const(0)
    if isinstance(node, Var):
        return Const(1) if node.name == var else Const(0)
    if isinstance(node, Add):
        return _add(derivative(node.a, var), derivative(node.b, var))
    if isinstance(node, Sub):
        return _sub(derivative(node.a, var), derivative(node.b, var))
    if isinstance(node, Neg):
        return Neg(derivative(node.a, var))
    if isinstance(node, Mul):
        return _add(_mul(derivative(node.a, var), node.b),
                    _mul(node.a, derivative(node.b, var)))
    if isinstance(node, Div):
        num = _sub(_mul(derivative(node.a, var), node.b),
                   _mul(node.a, derivative(node.b, var)))
        return _div(num, _pow(node.b, 2))
    if isinstance(node, Pow):
        inner = derivative(node.base, var)
        return _mul(_mul(Const(node.exponent), _pow(node.base, node.exponent - 1)),
                    inner)
    if isinstance(node, Func):
        inner = derivative(node.a, var)
        if node.name == "exp":
            outer = Func("exp", node.a)
        elif node.name == "sin":
            outer = Func("cos", node.a)
        else:  # cos
            outer = Neg(Func("sin", node.a))
        return _mul(outer, inner)
    raise TypeError(f"unknown node {node!r}")


def substitute(node: Node, var: str, replacement: Node) -> Node:
    """Replace every occurrence of ``var`` by ``replacement`` (composition)."""
    if isinstance(node, Const):
        return node
    if isinstance(node, Var):
        return replacement if node.name == var else node
    if isinstance(node, (Add, Sub, Mul, Div)):
        return type(node)(substitute(node.a, var, replacement),
                          substitute(node.b, var, replacement))
    if isinstance(node, Neg):
        return Neg(substitute(node.a, var, replacement))
    if isinstance(node, Pow):
        return Pow(substitute(node.base, var, replacement), node.exponent)
    if isinstance(node, Func):
        return Func(node.name, substitute(node.a, var, replacement))
    raise TypeError(f"unknown node {node!r}")


def _fmt_complex(value: complex) -> str:
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    if value.real == 0:
        return f"{value.imag!r}i"
    op = "+" if value.imag >= 0 else "-"
    return f"({value.real!r}{op}{abs(value.imag)!r}i)"


def to_string(node: Node) -> str:
    """Parseable infix rendering (parenthesized where needed)."""
    if isinstance(node, Const):
        return _fmt_complex(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Add):
        return f"{to_string(node.a)} + {to_string(node.b)}"
    if isinstance(node, Sub):
        return f"{to_string(node.a)} - ({to_string(node.b)})"
    if isinstance(node, Neg):
        return f"-({to_string(node.a)})"
    if isinstance(node, Mul):
        return f"({to_string(node.a)})*({to_string(node.b)})"
    if isinstance(node, Div):
        return f"({to_string(node.a)})/({to_string(node.b)})"
    if isinstance(node, Pow):
        return f"({to_string(node.base)})^{node.exponent}"
    if isinstance(node, Func):
        return f"{node.name}({to_string(node.a)})"
    raise TypeError(f"unknown node {node!r}")


def variables_of(node: Node) -> set:
    """Set of variable names appearing in the tree."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, (Add, Sub, Mul, Div)):
        return variables_of(node.a) | variables_of(node.b)
    if isinstance(node, (Neg, Func)):
        return variables_of(node.a)
    if isinstance(node, Pow):
        return variables_of(node.base)
    return set()


# ----------------------------- parser -------------------------------------

_TOK_NUM = "num"
_TOK_IDENT = "ident"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit() or (ch == "." and pos + 1 < n and text[pos + 1].isdigit()):
            start = pos
            while pos < n and (text[pos].isdigit() or text[pos] == "."):
                pos += 1
            if pos < n and text[pos] in "eE":
                mark = pos
                pos += 1
                if pos < n and text[pos] in "+-":
                    pos += 1
                if pos < n and text[pos].isdigit():
                    while pos < n and text[pos].isdigit():
                        pos += 1
                else:
                    pos = mark  # the e belongs to an identifier, not an exponent
            literal = text[start:pos]
            try:
                value = float(literal)
            except ValueError:
                raise ParseError(f"bad number literal '{literal}'", start)
            # an immediately following 'i' makes the literal imaginary,
            # unless it starts a longer identifier
            if pos < n and text[pos] == "i" and (pos + 1 >= n or not text[pos + 1].isalnum()):
                pos += 1
                tokens.append((_TOK_NUM, complex(0, value), start))
            else:
                tokens.append((_TOK_NUM, complex(value, 0), start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append((_TOK_IDENT, text[start:pos], start))
            continue
        if ch in "+-*/^(),":
            tokens.append((_TOK_OP, ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character '{ch}'", pos)
    tokens.append((_TOK_END, "", n))
    return tokens


_CONSTANTS = {"i": 1j, "pi": complex(math.pi)}


class _Parser:
    def __init__(self, text, variables, functions):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0
        self.variables = frozenset(variables)
        self.functions = frozenset(functions)

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, symbol):
        kind, value, pos = self.peek()
        if kind != _TOK_OP or value != symbol:
            raise ParseError(f"expected '{symbol}'", pos)
        self.advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != _TOK_END:
            raise ParseError(f"unexpected trailing input '{value}'", pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value in "+-":
                self.advance()
                rhs = self.term()
                node = Add(node, rhs) if value == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value in "*/":
                self.advance()
                rhs = self.factor()
                node = Mul(node, rhs) if value == "*" else Div(node, rhs)
            else:
                return node

    def factor(self) -> Node:
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value == "-":
            self.advance()
            return Neg(self.factor())
        if kind == _TOK_OP and value == "+":
            self.advance()
            return self.factor()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        exponents = []
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value == "^":
                self.advance()
                exponents.append(self.int_exponent())
            else:
                break
        if not exponents:
            return base
        # Chained integer exponents associate to the right: 2^3^2 = 2^9.
        combined = exponents[-1]
        for e in reversed(exponents[:-1]):
            if combined < 0:
                _, _, pos = self.peek()
                raise ParseError("chained exponents must stay integral", pos)
            combined = e ** combined
        return Pow(base, combined)

    def int_exponent(self) -> int:
        sign = 1
        kind, value, pos = self.peek()
        if kind == _TOK_OP and value in "+-":
            self.advance()
            sign = -1 if value == "-" else 1
            kind, value, pos = self.peek()
        if kind != _TOK_NUM or value.imag != 0 or value.real != int(value.real):
            raise ParseError("exponent must be an integer literal", pos)
        self.advance()
        return sign * int(value.real)

    def atom(self) -> Node:
        kind, value, pos = self.advance()
        if kind == _TOK_NUM:
            return Const(value)
        if kind == _TOK_IDENT:
            if value in self.functions:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Func(value, arg)
            if value in self.variables:
                return Var(value)
            if value in _CONSTANTS:
                return Const(_CONSTANTS[value])
            raise ParseError(f"unknown name '{value}'", pos)
        if kind == _TOK_OP and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token '{value}'" if value else "unexpected end of input", pos)


def parse(text: str, variables=("xi",), functions=("exp",)) -> Node:
    """Parse ``text`` into a tree over the allowed variables/functions."""
    return _Parser(text, variables, functions).parse()
