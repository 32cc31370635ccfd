"""Text form of polynomials: a recursive-descent parser and a printer.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | var ('^' uint)? | '(' expr ')' | '-' factor
    coeff  := int ('/' uint)?

Whitespace (newlines included) is ignored; products need an explicit ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ..errors import DomainError, ParseError, UnknownIdentifierError
from ..exactnum import format_rational
from .order import GREVLEX, MonomialOrder
from .polynomial import Polynomial
from .table import VarTable

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:\[\d+(?:,\d+)*\])?)
  | (?P<op>[-+*/^()])
    """,
    re.X,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, vt: VarTable):
        self.text = text
        self.vt = vt
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, self.text, tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect_uint(self, what):
        tok = self.tok
        if tok.kind != "num":
            raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while self.accept("*"):
            p = p * self.factor()
        return p

    def factor(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            num = int(tok.text)
            den = 1
            if self.accept("/"):
                den_tok = self.tok
                den = self.expect_uint("denominator")
                if den == 0:
                    raise self.error("zero denominator", den_tok)
            return Polynomial.constant(self.vt, Fraction(num, den))
        if tok.kind == "ident":
            if tok.text not in self.vt:
                raise self.error(f"unknown identifier {tok.text!r}", tok, UnknownIdentifierError)
            self.i += 1
            power = 1
            if self.accept("^"):
                power = self.expect_uint("exponent")
            return Polynomial.var(self.vt, tok.text, power)
        if self.accept("("):
            p = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return p
        if self.accept("-"):
            return -self.factor()
        raise self.error(f"expected a number, variable or '(' but found {tok.text or 'end of input'!r}")


def parse(text: str, vt: VarTable) -> Polynomial:
    """Parse ``text`` into an exact polynomial over ``vt``."""
    try:
        return _Parser(text, vt).parse()
    except DomainError as exc:  # pragma: no cover - zero denominators are caught above
        raise ParseError(str(exc), text) from exc


def format_monomial(vt: VarTable, mono, ranking) -> str:
    parts = []
    for nm in ranking:
        e = mono[vt.index(nm)]
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: MonomialOrder | None = None) -> str:
    """Deterministic text: terms descending in ``order``, e.g. ``E10^2 - 2*E20 - L^2``."""
    if p.is_zero():
        return "0"
    order = order or GREVLEX
    ranking = order.variable_ranking(p.vt)
    out = []
    for k, (mono, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        mag = -c if neg else c
        body = format_monomial(p.vt, mono, ranking)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if k == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)
