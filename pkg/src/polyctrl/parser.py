"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant):

    expr     := ("+" | "-")? term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" int)?
    base     := rational | var | "(" expr ")"
    rational := "-"? uint ("/" uint)?
    var      := identifier declared in the ring

Implicit multiplication is a syntax error ("2x" is rejected).  The leading
sign in expr is accepted so the printer's output re-parses.  Negative
exponents are allowed on rationals (exact) and, in Laurent rings, on
variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple

from .poly import Polynomial, Ring


class ParseError(ValueError):
    """Syntax or semantic error, with the 0-based source position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class Token(NamedTuple):
    kind: str  # "int", "name", one of "+-*/^()", or "end"
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def _tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[bad_at]!r}", bad_at)
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        else:
            tokens.append(Token(m.group(3), m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.ring = ring
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    # expr := ("+"|"-")? term (("+"|"-") term)*
    def expr(self) -> Polynomial:
        sign = 1
        if self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -1
        result = self.term() * sign
        while self.peek().kind in "+-":
            op = self.advance().kind
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    # term := factor ("*" factor)*
    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek().kind == "*":
            self.advance()
            result = result * self.factor()
        return result

    # factor := base ("^" int)?
    def factor(self) -> Polynomial:
        base, base_tok = self.base()
        if self.peek().kind != "^":
            return base
        self.advance()
        exp_sign = 1
        if self.peek().kind == "-":
            self.advance()
            exp_sign = -1
        exp_tok = self.expect("int")
        exponent = exp_sign * int(exp_tok.text)
        if exponent >= 0:
            return base ** exponent
        # negative exponents: exact on rationals, unit monomials in Laurent rings
        if base.is_constant():
            value = base.constant_value()
            if value == 0:
                raise ParseError("zero raised to a negative power", exp_tok.pos)
            return self.ring.constant(value ** exponent)
        if base_tok.kind == "name" and self.ring.laurent:
            return base ** exponent
        if base_tok.kind == "name":
            raise ParseError(
                f"negative exponent on {base_tok.text!r} needs a Laurent ring", exp_tok.pos
            )
        raise ParseError("negative exponent only allowed on a variable or rational", exp_tok.pos)

    # base := rational | var | "(" expr ")"
    def base(self):
        tok = self.peek()
        if tok.kind == "int" or tok.kind == "-":
            return self.rational(), tok
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.ring.var_names:
                raise ParseError(f"unknown variable {tok.text!r}", tok.pos)
            index = self.ring.var_names.index(tok.text)
            return self.ring.variable(index), tok
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner, tok
        raise ParseError(f"expected a number, variable or '(', found {tok.text or 'end of input'!r}", tok.pos)

    # rational := "-"? uint ("/" uint)?
    def rational(self) -> Polynomial:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        num_tok = self.expect("int")
        value = Fraction(sign * int(num_tok.text))
        if self.peek().kind == "/":
            self.advance()
            den_tok = self.expect("int")
            den = int(den_tok.text)
            if den == 0:
                raise ParseError("zero denominator", den_tok.pos)
            value /= den
        return self.ring.constant(value)


def parse_polynomial(src: str, ring: Ring) -> Polynomial:
    """Parse src into a canonical expanded polynomial of the given ring."""
    parser = _Parser(src, ring)
    result = parser.expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected {tail.text!r}", tail.pos)
    return result
