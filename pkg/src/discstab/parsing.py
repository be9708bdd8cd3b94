"""Expression text for disc elements.

Grammar (leading minus allowed so printed elements round-trip):

    expr   := '-'? term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' uint)?
    base   := rational | 'z' | '(' expr ')'

Rationals accept integer, decimal and a/b text and are read exactly.
Elaboration evaluates the tree to a DiscElement and rejects it when any
denominator subterm is not a certified unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .element import DiscElement, VAR_Z, as_element, element, format_element
from .errors import ParseError


@dataclass(frozen=True)
class NumberLit:
    value: Fraction


@dataclass(frozen=True)
class VarZ:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


Expr = Union[NumberLit, VarZ, Neg, BinOp, Power]


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, Z, OP, LPAREN, RPAREN, EOF
    text: str
    pos: int


_OPS = set("+-*/^")


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            out.append(_Token("NUMBER", text[i:j], i))
            i = j
            continue
        if c == "z":
            out.append(_Token("Z", c, i))
            i += 1
            continue
        if c in _OPS:
            out.append(_Token("OP", c, i))
            i += 1
            continue
        if c == "(":
            out.append(_Token("LPAREN", c, i))
            i += 1
            continue
        if c == ")":
            out.append(_Token("RPAREN", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i, {"number", "z", "(", "operator"})
    out.append(_Token("EOF", "", n))
    return out


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.cur
        self.i += 1
        return t

    def fail(self, expected) -> "ParseError":
        t = self.cur
        what = t.text or "end of input"
        return ParseError(f"unexpected {what!r}", t.pos, expected)

    def parse(self) -> Expr:
        node = self.expr()
        if self.cur.kind != "EOF":
            raise self.fail({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Expr:
        negate = False
        if self.cur.kind == "OP" and self.cur.text == "-":
            self.advance()
            negate = True
        node = self.term()
        if negate:
            node = Neg(node)
        while self.cur.kind == "OP" and self.cur.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.cur.kind == "OP" and self.cur.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self.cur.kind == "OP" and self.cur.text == "^":
            self.advance()
            t = self.cur
            if t.kind != "NUMBER" or "." in t.text:
                raise self.fail({"nonnegative integer"})
            self.advance()
            node = Power(node, int(t.text))
        return node

    def base(self) -> Expr:
        t = self.cur
        if t.kind == "NUMBER":
            self.advance()
            return NumberLit(Fraction(t.text))
        if t.kind == "Z":
            self.advance()
            return VarZ()
        if t.kind == "LPAREN":
            self.advance()
            node = self.expr()
            if self.cur.kind != "RPAREN":
                raise self.fail({")"})
            self.advance()
            return node
        raise self.fail({"number", "z", "("})


def parse(text: str) -> Expr:
    """Parse expression text into a syntax tree (ParseError on bad input)."""
    return _Parser(_tokenize(text)).parse()


def elaborate(expr: Expr) -> DiscElement:
    """Evaluate a tree to a DiscElement.

    Raises NonUnitDenominator when a division's denominator is not a
    certified unit of the algebra.
    """
    if isinstance(expr, NumberLit):
        return element(expr.value)
    if isinstance(expr, VarZ):
        return VAR_Z
    if isinstance(expr, Neg):
        return -elaborate(expr.operand)
    if isinstance(expr, Power):
        return elaborate(expr.base) ** expr.exponent
    if isinstance(expr, BinOp):
        left = elaborate(expr.left)
        right = elaborate(expr.right)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        return left / right
    raise TypeError(f"not an expression node: {expr!r}")


def parse_element(text: str) -> DiscElement:
    """Parse and elaborate in one step."""
    return elaborate(parse(text))


def print_element(a) -> str:
    """Canonical text for an element; parse_element inverts it structurally."""
    return format_element(as_element(a))
