"""Recursive-descent parser for potential expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | factor
    factor := base ("^" integer)?
    base   := number | symbol | "(" expr ")" | ("sin" | "cos" | "sqrt") "(" expr ")"
    symbol := "f" digits
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Sym

__all__ = ["ParseError", "SymbolOutOfRange", "parse_expr"]

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+\.\d*|\.\d+|\d+)|(?P<func>sin|cos|sqrt)\b|"
    r"(?P<symbol>f\d+)|(?P<op>[-+*/^()]))"
)


class ParseError(SyntaxError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position
        self.offset = position


class SymbolOutOfRange(ValueError):
    def __init__(self, index: int, limit: int):
        super().__init__(f"f{index} is outside f1..f{limit}")
        self.index = index
        self.limit = limit


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.limit = None if m is None else 2 * m + 1

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", self.text, pos)

    def fail(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.unary()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        node = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, text, pos = self.take()
            if kind != "number" or not text.isdigit():
                raise ParseError("exponent must be a non-negative integer", self.text, pos)
            node = Pow(node, int(text))
        return node

    def base(self) -> Expr:
        kind, text, pos = self.take()
        if kind == "number":
            return Const(Fraction(text))
        if kind == "symbol":
            index = int(text[1:])
            if index < 1 or (self.limit is not None and index > self.limit):
                raise SymbolOutOfRange(index, self.limit or 0)
            return Sym(index)
        if kind == "func":
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Func(text, arg)
        if (kind, text) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", self.text, pos)


def parse_expr(text: str, m: int | None = None) -> Expr:
    """Parse ``text``; with ``m`` given, symbols must lie in ``f1..f{2m+1}``."""
    parser = _Parser(text, m)
    node = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail(f"unexpected {parser.peek()[1]!r}")
    return node
