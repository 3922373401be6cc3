"""Parser for the s-expression group-construction format.

Grammar (";" starts a comment to end of line):

    expr  := "(" head args ")"
    head  := trivial | z | cyclic | free | free-abelian | surface
           | amenable | artin | coxeter | amalgam-finite
           | amalgam-amenable | generation
    order := "inf" | positive integer

    (trivial)                         (z)
    (cyclic N)          N >= 2        (free R)            R >= 1
    (free-abelian R)    R >= 1        (surface G)         G >= 2
    (amenable "tag" ORDER)
    (artin "file.graph")              (coxeter "file.graph")
    (amalgam-finite EXPR EXPR N)      N >= 1
    (amalgam-amenable EXPR EXPR EXPR ORDER ORDER ORDER)
    (generation EXPR EXPR "justification")

Graph file paths are resolved relative to the expression file's directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import groupexpr as ge
from .lgraph import parse_graph


class ExprParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # "(", ")", "atom", "string"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            tokens.append(_Token(c, c, line, col))
            i += 1
            col += 1
        elif c == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\n":
                    raise ExprParseError("unterminated string", start_line, start_col)
                buf.append(text[i])
                i += 1
                col += 1
            if i >= n:
                raise ExprParseError("unterminated string", start_line, start_col)
            i += 1
            col += 1
            tokens.append(_Token("string", "".join(buf), start_line, start_col))
        else:
            start_line, start_col = line, col
            buf = []
            while i < n and text[i] not in ' \t\r\n();"':
                buf.append(text[i])
                i += 1
                col += 1
            tokens.append(_Token("atom", "".join(buf), start_line, start_col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], base_dir: str):
        self.tokens = tokens
        self.pos = 0
        self.base_dir = base_dir

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expect: str | None = None) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("atom", "", 1, 1)
            raise ExprParseError("unexpected end of input", last.line, last.col)
        if expect is not None and tok.kind != expect:
            raise ExprParseError(f"expected {expect}, got {tok.text!r}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self) -> ge.GroupExpr:
        expr = self._expr()
        trailing = self._peek()
        if trailing is not None:
            raise ExprParseError(
                f"trailing input {trailing.text!r}", trailing.line, trailing.col
            )
        return expr

    def _expr(self) -> ge.GroupExpr:
        tok = self._next()
        if tok.kind == "atom":
            if tok.text == "z":
                return ge.IntegersZ()
            if tok.text == "trivial":
                return ge.TrivialGroup()
            raise ExprParseError(f"unknown atom {tok.text!r}", tok.line, tok.col)
        if tok.kind != "(":
            raise ExprParseError(f"expected expression, got {tok.text!r}", tok.line, tok.col)
        head = self._next("atom")
        try:
            expr = self._form(head)
        except ValueError as exc:
            if isinstance(exc, ExprParseError):
                raise
            raise ExprParseError(str(exc), head.line, head.col) from None
        self._next(")")
        return expr

    def _form(self, head: _Token) -> ge.GroupExpr:
        name = head.text
        if name == "trivial":
            return ge.TrivialGroup()
        if name == "z":
            return ge.IntegersZ()
        if name == "cyclic":
            return ge.Cyclic(self._int(minimum=2))
        if name == "free":
            return ge.Free(self._int(minimum=1))
        if name == "free-abelian":
            return ge.FreeAbelian(self._int(minimum=1))
        if name == "surface":
            return ge.Surface(self._int(minimum=2))
        if name == "amenable":
            tag = self._next("string").text
            return ge.Amenable(tag, self._order())
        if name in ("artin", "coxeter"):
            path_tok = self._next("string")
            path = os.path.join(self.base_dir, path_tok.text)
            try:
                with open(path, encoding="utf-8") as fh:
                    graph = parse_graph(fh.read())
            except OSError as exc:
                raise ExprParseError(
                    f"cannot read graph file {path_tok.text!r}: {exc}",
                    path_tok.line, path_tok.col,
                ) from None
            return ge.ArtinGraph(graph) if name == "artin" else ge.CoxeterGraph(graph)
        if name == "amalgam-finite":
            left = self._expr()
            right = self._expr()
            return ge.AmalgamFinite(left, right, self._int(minimum=1))
        if name == "amalgam-amenable":
            left = self._expr()
            right = self._expr()
            sub = self._expr()
            return ge.AmalgamAmenable(left, right, sub, self._order(), self._order(), self._order())
        if name == "generation":
            left = self._expr()
            right = self._expr()
            justification = self._next("string").text
            return ge.Generation(left, right, justification)
        raise ExprParseError(f"unknown construction {name!r}", head.line, head.col)

    def _int(self, minimum: int) -> int:
        tok = self._next("atom")
        try:
            value = int(tok.text)
        except ValueError:
            raise ExprParseError(f"expected integer, got {tok.text!r}", tok.line, tok.col) from None
        if value < minimum:
            raise ExprParseError(f"integer {value} < {minimum}", tok.line, tok.col)
        return value

    def _order(self) -> ge.GroupOrder:
        tok = self._next("atom")
        if tok.text == "inf":
            return ge.INFINITE
        try:
            value = int(tok.text)
        except ValueError:
            raise ExprParseError(
                f"expected order (integer or inf), got {tok.text!r}", tok.line, tok.col
            ) from None
        if value < 1:
            raise ExprParseError(f"order {value} < 1", tok.line, tok.col)
        return ge.GroupOrder(value)


def parse_expr(text: str, base_dir: str = ".") -> ge.GroupExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ExprParseError("empty expression", 1, 1)
    return _Parser(tokens, base_dir).parse()


def parse_expr_file(path: str) -> ge.GroupExpr:
    with open(path, encoding="utf-8") as fh:
        return parse_expr(fh.read(), base_dir=os.path.dirname(os.path.abspath(path)))
