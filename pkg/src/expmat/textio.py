"""Plain-text matrix format and the block-expression grammar.

Matrix text: one row per line, entries separated by whitespace, lines whose
first non-blank character is ``#`` and blank lines ignored.

Expression grammar (whitespace insignificant)::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := 'T' '{' int (',' int)* '}' ('^' posint)?

``+`` is the join, ``*`` the componentwise sum and ``^`` repeated sum.  The
lone token ``0`` denotes the empty join (the zero matrix).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Block, NatMatrix
from .decompose import Factor, TropicalExpression
from .errors import ImproperSubsetError, InvalidMatrixError, ParseError

__all__ = ["parse_matrix", "parse_matrices", "format_matrix", "format_matrices",
           "parse_expression", "format_expression"]

_INT = re.compile(r"\d+\Z")


def parse_matrix(text: str) -> NatMatrix:
    rows: list[list[int]] = []
    lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            tok = m.group()
            if not _INT.match(tok):
                raise ParseError(f"expected a non-negative integer, got {tok!r}",
                                 lineno, m.start() + 1)
            row.append(int(tok))
        rows.append(row)
        lines.append(lineno)
    if not rows:
        raise ParseError("no matrix rows found")
    n = len(rows)
    for row, lineno in zip(rows, lines):
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n} (matrix must be square)",
                             lineno)
    for i, (row, lineno) in enumerate(zip(rows, lines)):
        if row[i] != 0:
            col = [m.start() + 1 for m in re.finditer(r"\S+", text.splitlines()[lineno - 1])][i]
            raise ParseError(f"diagonal entry ({i + 1}, {i + 1}) is {row[i]}, expected 0",
                             lineno, col)
    try:
        return NatMatrix(rows)
    except InvalidMatrixError as e:  # pragma: no cover - guarded above
        raise ParseError(str(e)) from e


def parse_matrices(text: str) -> list[NatMatrix]:
    """Inverse of :func:`format_matrices`: blank lines separate matrices."""
    out = []
    lines = text.splitlines()
    start = None
    for k, line in enumerate(lines + [""]):
        if line.strip():
            if start is None:
                start = k
        elif start is not None:
            # pad so diagnostics keep the original line numbers
            out.append(parse_matrix("\n" * start + "\n".join(lines[start:k])))
            start = None
    return out


def format_matrix(m: NatMatrix) -> str:
    return str(m) + "\n"


def format_matrices(ms) -> str:
    """Matrices separated by blank lines."""
    return "\n".join(format_matrix(m) for m in ms)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([T{},*+^]))")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", 1, col)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1) + 1))
        else:
            toks.append(_Tok(m.group(2), m.group(2), m.start(2) + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {kind!r}, found {found}", 1, tok.pos)
        self.i += 1
        return tok

    def expr(self) -> TropicalExpression:
        if self.peek().kind == "int" and self.toks[self.i + 1].kind == "eof":
            tok = self.take("int")
            if int(tok.text) != 0:
                raise ParseError(f"expected a factor, found {tok.text!r}", 1, tok.pos)
            return TropicalExpression(self.n, ())
        terms = [self.term()]
        while self.peek().kind == "+":
            self.take("+")
            terms.append(self.term())
        self.take("eof")
        return TropicalExpression(self.n, tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek().kind == "*":
            self.take("*")
            factors.append(self.factor())
        return tuple(factors)

    def factor(self) -> Factor:
        start = self.take("T")
        self.take("{")
        idx = [int(self.take("int").text)]
        while self.peek().kind == ",":
            self.take(",")
            idx.append(int(self.take("int").text))
        self.take("}")
        power = 1
        if self.peek().kind == "^":
            self.take("^")
            tok = self.take("int")
            power = int(tok.text)
            if power == 0:
                raise ParseError("power must be positive", 1, tok.pos)
        try:
            b = Block(self.n, frozenset(idx))
        except ImproperSubsetError as e:
            raise ImproperSubsetError(f"column {start.pos}: {e}") from e
        return Factor(b, power)


def parse_expression(text: str, n: int) -> TropicalExpression:
    return _Parser(text, n).expr()


def format_expression(e: TropicalExpression) -> str:
    return str(e)
