"""Parser for monic monomial sums in x, y, z, w.

Grammar (whitespace ignored)::

    poly   := term ('+' term)*
    term   := factor ('*'? factor)*
    factor := var ('^' uint)?
    var    := 'x' | 'y' | 'z' | 'w'

Coefficients are not part of the grammar.  Repeated variables inside a term
multiply out, so ``x*x^2`` is ``x^3``.
"""

from __future__ import annotations

from dataclasses import dataclass

VARIABLES = "xyzw"


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class PolynomialAST:
    monomials: tuple[dict[str, int], ...]

    def exponent_rows(self) -> list[list[int]]:
        return [[mono.get(v, 0) for v in VARIABLES] for mono in self.monomials]

    def degrees(self) -> list[int]:
        return [sum(mono.values()) for mono in self.monomials]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _error(self, message: str) -> PolynomialSyntaxError:
        # offsets are byte offsets into the UTF-8 encoding of the input
        return PolynomialSyntaxError(message, len(self.text[: self.pos].encode()))

    def parse(self) -> PolynomialAST:
        terms = [self._term()]
        while self._peek() == "+":
            self.pos += 1
            terms.append(self._term())
        if self._peek():
            raise self._error(f"unexpected {self._peek()!r}")
        return PolynomialAST(tuple(terms))

    def _term(self) -> dict[str, int]:
        mono: dict[str, int] = {}
        self._factor(mono)
        while True:
            c = self._peek()
            if c == "*":
                self.pos += 1
                self._factor(mono)
            elif c.isalpha():
                self._factor(mono)
            else:
                return mono

    def _factor(self, mono: dict[str, int]) -> None:
        c = self._peek()
        if not c:
            raise self._error("unexpected end of input")
        if not c.isalpha():
            raise self._error(f"expected a variable, found {c!r}")
        if c not in VARIABLES:
            raise self._error(f"unknown variable {c!r}")
        self.pos += 1
        exp = 1
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise self._error("expected an exponent after '^'")
            exp = int(self.text[start:self.pos])
            if exp == 0:
                self.pos = start
                raise self._error("zero exponent")
        mono[c] = mono.get(c, 0) + exp


def parse(text: str) -> PolynomialAST:
    return _Parser(text).parse()


def format_monomial(row: list[int] | tuple[int, ...]) -> str:
    parts = []
    for v, e in zip(VARIABLES, row):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def format_polynomial(rows) -> str:
    return " + ".join(format_monomial(r) for r in rows)
