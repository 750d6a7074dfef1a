"""Surface syntax for ring elements.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' int)?
    atom   := rational | 'i' | ident | '(' expr ')'

``rational`` is ``digits`` or ``digits/digits``; ``int`` may carry a
leading minus sign.  Identifiers must be declared in the target
:class:`~supergeo.superpoly.VarTable`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, NegativePowerOfNonUnit, NotAUnit, UnknownVariable
from .scalar import I, Scalar
from .superpoly import SuperPolynomial, VarTable, render

__all__ = ["parse", "parse_expr", "render", "Num", "Imag", "Var", "Neg", "BinOp", "Pow"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(
                f"unexpected character {src[pos]!r}", pos, ("number", "identifier", "operator")
            )
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.take()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", pos, (repr(op),))

    def parse(self):
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(
                f"unexpected {text!r}", pos, ("'+'", "'-'", "'*'", "end of input")
            )
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                node = BinOp(text, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
                node = BinOp("*", node, self.factor())
            else:
                return node

    def factor(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.factor())
        node = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            negative = False
            kind, text, pos = self.peek()
            if kind == "op" and text == "-":
                self.take()
                negative = True
            kind, text, pos = self.take()
            if kind != "num" or "/" in text:
                raise ExprSyntaxError(
                    f"unexpected {text or 'end of input'!r}", pos, ("integer exponent",)
                )
            node = Pow(node, -int(text) if negative else int(text))
        return node

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Num(Fraction(text))
        if kind == "ident":
            return Imag() if text == "i" else Var(text)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(
            f"unexpected {text or 'end of input'!r}", pos, ("number", "'i'", "identifier", "'('")
        )


def parse_expr(src: str):
    """Parse ``src`` into an AST without evaluating it."""
    return _Parser(src).parse()


def evaluate(node, ring: VarTable) -> SuperPolynomial:
    if isinstance(node, Num):
        return ring.const(node.value)
    if isinstance(node, Imag):
        return ring.const(I)
    if isinstance(node, Var):
        if node.name not in ring:
            raise UnknownVariable(f"unknown variable {node.name!r}")
        return ring.var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, BinOp):
        left, right = evaluate(node.left, ring), evaluate(node.right, ring)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        base = evaluate(node.base, ring)
        if node.exponent < 0:
            try:
                return base**node.exponent
            except NotAUnit as exc:
                raise NegativePowerOfNonUnit(str(exc)) from exc
        return base**node.exponent
    raise TypeError(f"unknown node {node!r}")


def parse(src: str, ring: VarTable) -> SuperPolynomial:
    """Parse ``src`` into a canonical element of ``ring``."""
    return evaluate(parse_expr(src), ring)


def scalar_from_str(src: str) -> Scalar:
    p = parse(src, VarTable())
    return p.constant_term()
