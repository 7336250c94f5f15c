"""Expression language for algebra elements.

Grammar (whitespace insignificant)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := rational | name | '(' expr ')'
    rational := uint ('/' uint)?

``^`` takes a non-negative integer literal only; division appears only
inside rational literals.  The formatter is deterministic (terms in
descending deg-lex order, coefficients as ``a/b`` or ``a``) and
``parse(format(f)) == f`` for every polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraError, AlgebraSpec, GradedPoly, Monomial


class ExprSyntaxError(ValueError):
    """Syntax error, carrying the 0-based position in the source text."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownGeneratorError(ExprSyntaxError):
    """A name in the expression is not a generator of the algebra."""


class _Parser:
    def __init__(self, text, algebra):
        self.text = text
        self.algebra = algebra
        self.pos = 0

    def error(self, message):
        raise ExprSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a digit")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start:self.pos]

    def atom(self) -> GradedPoly:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if not self.eat(")"):
                self.error("expected ')'")
            return inner
        if c.isdigit():
            num = self.uint()
            if self.eat("/"):
                den = self.uint()
                if den == 0:
                    self.error("zero denominator")
                return self.algebra.const(Fraction(num, den))
            return self.algebra.const(num)
        if c.isalpha() or c == "_":
            pos = self.pos
            ident = self.name()
            try:
                return self.algebra.gen(ident)
            except AlgebraError:
                raise UnknownGeneratorError(
                    f"unknown generator {ident!r}", pos
                ) from None
        self.error("expected a number, generator name, or '('")

    def factor(self) -> GradedPoly:
        base = self.atom()
        if self.eat("^"):
            ch = self.peek()
            if not ch.isdigit():
                self.error("exponent must be a non-negative integer literal")
            return base ** self.uint()
        return base

    def term(self) -> GradedPoly:
        out = self.factor()
        while self.eat("*"):
            out = out * self.factor()
        return out

    def expr(self) -> GradedPoly:
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        out = self.term() * sign
        while True:
            if self.eat("+"):
                out = out + self.term()
            elif self.eat("-"):
                out = out - self.term()
            else:
                return out


def parse_expr(text: str, algebra: AlgebraSpec) -> GradedPoly:
    """Parse an expression string into a polynomial over the algebra."""
    p = _Parser(text, algebra)
    out = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error(f"unexpected character {text[p.pos]!r}")
    return out


def _format_monomial(m: Monomial, algebra: AlgebraSpec) -> str:
    order = {n: i for i, n in enumerate(algebra.names())}
    parts = []
    for name, e in sorted(m.exps, key=lambda ne: order[ne[0]]):
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: GradedPoly) -> str:
    """Deterministic text form; round-trips through parse_expr."""
    if f.is_zero():
        return "0"
    monos = sorted(f.terms, key=f.algebra.monomial_key, reverse=True)
    pieces = []
    for i, m in enumerate(monos):
        c = f.terms[m]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(m, f.algebra)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
