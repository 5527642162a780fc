"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := natural | variable | '(' expr ')' | '-' base

Unary minus sits inside ``base``, so ``-x^2`` reads as ``(-x)^2``.
Literals are reduced mod p; juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple

from ..exceptions import PolynomialSyntaxError, UnknownVariableError
from .multipoly import MultiPoly, PolyRing

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])"
)


class Token(NamedTuple):
    kind: str
    value: str
    position: int


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PolynomialSyntaxError(
                f"unexpected character {text[pos]!r}", text=text, position=pos
            )
        kind = match.lastgroup
        if kind != "ws":
            yield Token(kind, match.group(), pos)
        pos = match.end()
    yield Token("end", "", len(text))


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = list(tokenize(text))
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> PolynomialSyntaxError:
        tok = tok or self.current
        return PolynomialSyntaxError(message, text=self.text, position=tok.position)

    def accept(self, value: str) -> bool:
        if self.current.kind == "op" and self.current.value == value:
            self.i += 1
            return True
        return False

    def parse(self) -> MultiPoly:
        if self.current.kind == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.current.kind != "end":
            tok = self.current
            if tok.kind in ("name", "num") or tok.value == "(":
                raise self.error("missing operator (implicit multiplication is not allowed)")
            raise self.error(f"unexpected {tok.value!r}")
        return result

    def expr(self) -> MultiPoly:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while self.accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> MultiPoly:
        base = self.base()
        if self.accept("^"):
            tok = self.current
            if tok.kind != "num":
                raise self.error("expected a natural exponent after '^'")
            self.advance()
            return base ** int(tok.value)
        return base

    def base(self) -> MultiPoly:
        tok = self.current
        if tok.kind == "num":
            self.advance()
            return self.ring.constant(int(tok.value))
        if tok.kind == "name":
            self.advance()
            if tok.value not in self.ring.variables:
                raise UnknownVariableError(tok.value, text=self.text, position=tok.position)
            return self.ring.gen(tok.value)
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return inner
        if self.accept("-"):
            return -self.base()
        if tok.kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {tok.value!r}")


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse ``text`` into a polynomial of ``ring``."""
    return _Parser(text, ring).parse()


def parse_generators(texts: list[str] | str, ring: PolyRing) -> list[MultiPoly]:
    """Parse one or more arguments, each holding comma-separated generators."""
    if isinstance(texts, str):
        texts = [texts]
    gens = []
    for text in texts:
        for piece in text.split(","):
            if piece.strip():
                gens.append(parse_poly(piece, ring))
    return gens
