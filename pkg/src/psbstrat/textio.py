"""Polynomial text grammar and canonical printer.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' integer)?
    base   := rational | name | '(' expr ')'
    rational := integer ('/' integer)?

Names must be declared up front; the printer emits terms in descending
active order and round-trips through the parser.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .orders import MonomialOrder
from .poly import Polynomial


def default_names(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> tuple[str, str, int]:
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", "", self.pos)
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", self.text[self.pos : j], self.pos)
        if ch.isalpha() or ch == "_":
            j = self.pos
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
            return ("name", self.text[self.pos : j], self.pos)
        if ch in "+-*^()/":
            return (ch, ch, self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def take(self):
        kind, value, pos = self.peek()
        self.pos = pos + len(value) if kind != "end" else pos
        return kind, value, pos


class _Parser:
    def __init__(self, text: str, names, order: MonomialOrder):
        self.toks = _Tokenizer(text)
        self.order = order
        self.index = {name: i for i, name in enumerate(names)}
        if len(self.index) != order.nvars:
            raise ParseError("declared names do not match the variable count")

    def parse(self) -> Polynomial:
        p = self._expr()
        kind, value, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos)
        return p

    def _expr(self) -> Polynomial:
        kind, _, _ = self.toks.peek()
        negate = False
        if kind in ("+", "-"):
            self.toks.take()
            negate = kind == "-"
        p = self._term()
        if negate:
            p = -p
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "+":
                self.toks.take()
                p = p + self._term()
            elif kind == "-":
                self.toks.take()
                p = p - self._term()
            else:
                return p

    def _term(self) -> Polynomial:
        p = self._factor()
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "*":
                self.toks.take()
                p = p * self._factor()
            else:
                return p

    def _factor(self) -> Polynomial:
        kind, value, pos = self.toks.peek()
        if kind == "-":
            self.toks.take()
            return -self._factor()
        base = self._base()
        kind, _, _ = self.toks.peek()
        if kind == "^":
            self.toks.take()
            kind, value, pos = self.toks.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(value)
        return base

    def _base(self) -> Polynomial:
        kind, value, pos = self.toks.take()
        if kind == "int":
            num = int(value)
            kind2, _, _ = self.toks.peek()
            if kind2 == "/":
                self.toks.take()
                kind3, value3, pos3 = self.toks.take()
                if kind3 != "int" or int(value3) == 0:
                    raise ParseError("denominator must be a nonzero integer", pos3)
                return Polynomial.constant(self.order, Fraction(num, int(value3)))
            return Polynomial.constant(self.order, num)
        if kind == "name":
            if value not in self.index:
                raise ParseError(f"unknown variable {value!r}", pos)
            return Polynomial.variable(self.order, self.index[value])
        if kind == "(":
            p = self._expr()
            kind2, _, pos2 = self.toks.take()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return p
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_polynomial(text: str, names, order: MonomialOrder) -> Polynomial:
    """Parse ``text`` over the declared ``names`` into a polynomial under ``order``."""
    return _Parser(text, names, order).parse()


def _monomial_str(exp, names) -> str:
    parts = []
    for i in range(len(exp) - 1, -1, -1):
        e = exp[i]
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts)


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def polynomial_str(p: Polynomial, names) -> str:
    """Terms in descending active order; output re-parses to an equal value."""
    if p.is_zero():
        return "0"
    chunks = []
    for i, (exp, c) in enumerate(p.terms):
        mono = _monomial_str(exp, names)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_coeff_str(mag)}*{mono}"
        else:
            body = _coeff_str(mag)
        if i == 0:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append(("+" if c > 0 else "-") + body)
    return "".join(chunks)
