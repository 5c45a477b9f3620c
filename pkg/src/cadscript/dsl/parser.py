"""Recursive-descent parser for the command language.

One statement per line; the empty program is valid.  All quantities
are converted to meters here so the tree is unit-free.  Error messages
are stable strings (snapshot-tested) because they are fed back to
translation providers during repair loops.
"""

from __future__ import annotations

import datetime as dt
import re
from typing import List, Optional, Tuple

from .ast import (
    At,
    Bake,
    BooleanOp,
    CreateBox,
    CreateGrid,
    CreateHypar,
    CreateSphere,
    Delete,
    Move,
    OnEdge,
    OnRandomEdge,
    Placement,
    Program,
    Span,
    Statement,
    SunStudy,
    Undo,
)
from .errors import ParseError
from .lexer import Token, tokenize

_INT_RE = re.compile(r"[+-]?\d+\Z")

_STATEMENT_KEYWORDS = frozenset(
    {
        "box",
        "sphere",
        "hypar",
        "grid",
        "union",
        "intersect",
        "difference",
        "move",
        "delete",
        "bake",
        "sunstudy",
        "undo",
    }
)


def parse(source: str) -> Program:
    """Parse ``source`` into a :class:`Program` or raise ``LexError``/``ParseError``."""
    lines: List[List[Token]] = [[]]
    for tok in tokenize(source):
        if tok.kind == "nl":
            lines.append([])
        else:
            lines[-1].append(tok)
    statements: List[Statement] = []
    for line in lines:
        if line:
            statements.append(_LineParser(line).statement())
    return Program(tuple(statements))


class _LineParser:
    def __init__(self, tokens: List[Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    # -- token plumbing ------------------------------------------------

    def _peek(self) -> Optional[Token]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _take(self) -> Token:
        tok = self._tokens[self._pos]
        self._pos += 1
        return tok

    def _eol_span(self) -> Span:
        end = self._tokens[-1].end
        return Span(end, end)

    def _error(self, message: str, tok: Optional[Token]) -> ParseError:
        if tok is None:
            return ParseError(f"{message}, got end of line", self._eol_span())
        return ParseError(f"{message}, got {tok.text!r}", Span(tok.offset, tok.end))

    def _accept_kw(self, word: str) -> bool:
        tok = self._peek()
        if tok is not None and tok.kind == "kw" and tok.text == word:
            self._pos += 1
            return True
        return False

    def _expect_kw(self, word: str) -> None:
        tok = self._peek()
        if tok is None or tok.kind != "kw" or tok.text != word:
            raise self._error(f"expected {word!r}", tok)
        self._pos += 1

    def _ident(self, what: str) -> str:
        tok = self._peek()
        if tok is None or tok.kind != "ident":
            raise self._error(f"expected {what}", tok)
        self._pos += 1
        return tok.text

    def _number_token(self, what: str) -> Token:
        tok = self._peek()
        if tok is None or tok.kind != "num":
            raise self._error(f"expected {what}", tok)
        self._pos += 1
        return tok

    def _quantity(self, what: str) -> float:
        """A length, converted to meters (``m`` attached, trailing, or implied)."""
        tok = self._number_token(what)
        unit = tok.unit
        if unit is None:
            nxt = self._peek()
            if nxt is not None and nxt.kind == "ident" and nxt.text in ("m", "cm"):
                unit = nxt.text
                self._pos += 1
        value = float(tok.value)
        if unit == "cm":
            return value / 100.0
        return value

    def _float(self, what: str) -> float:
        tok = self._number_token(what)
        if tok.unit is not None:
            raise ParseError(f"unexpected unit on {what}", Span(tok.offset, tok.end))
        return float(tok.value)

    def _int(self, what: str) -> int:
        tok = self._number_token(what)
        if tok.unit is not None or _INT_RE.match(tok.text) is None:
            raise self._error(f"expected integer {what}", tok)
        return int(tok.text)

    def _date(self) -> dt.date:
        tok = self._peek()
        if tok is None or tok.kind != "date":
            raise self._error("expected date (YYYY-MM-DD)", tok)
        self._pos += 1
        year, month, day = (int(part) for part in tok.text.split("-"))
        try:
            return dt.date(year, month, day)
        except ValueError:
            raise ParseError("invalid calendar date", Span(tok.offset, tok.end)) from None

    def _name_clause(self) -> Optional[str]:
        if self._accept_kw("name"):
            return self._ident("object name")
        return None

    def _finish(self) -> Span:
        tok = self._peek()
        if tok is not None:
            raise ParseError(
                f"unexpected trailing input {tok.text!r}", Span(tok.offset, tok.end)
            )
        first = self._tokens[0]
        return Span(first.offset, self._tokens[-1].end)

    # -- statements ----------------------------------------------------

    def statement(self) -> Statement:
        tok = self._tokens[0]
        if tok.kind != "kw" or tok.text not in _STATEMENT_KEYWORDS:
            raise ParseError(
                f"unknown statement {tok.text!r}", Span(tok.offset, tok.end)
            )
        handler = getattr(self, f"_stmt_{tok.text}")
        self._pos = 1
        return handler()

    def _at_clause(self) -> At:
        x = self._quantity("x coordinate")
        y = self._quantity("y coordinate")
        z = self._quantity("z coordinate")
        return At((x, y, z))

    def _stmt_box(self) -> CreateBox:
        width = self._quantity("width")
        depth = self._quantity("depth")
        height = self._quantity("height")
        placement = At((0.0, 0.0, 0.0))
        if self._accept_kw("at"):
            placement = self._at_clause()
        name = self._name_clause()
        return CreateBox((width, depth, height), placement, name, span=self._finish())

    def _stmt_sphere(self) -> CreateSphere:
        radius = self._quantity("radius")
        placement: Placement = At((0.0, 0.0, 0.0))
        if self._accept_kw("at"):
            placement = self._at_clause()
        elif self._accept_kw("on"):
            self._expect_kw("edge")
            target = self._ident("edge target")
            if self._accept_kw("random"):
                placement = OnRandomEdge(target)
            else:
                edge = self._int("edge index")
                tok = self._peek()
                if tok is not None and tok.kind == "num":
                    t = self._float("edge parameter")
                else:
                    t = 0.5
                placement = OnEdge(target, edge, t)
        quality: Optional[int] = None
        if self._accept_kw("quality"):
            quality = self._int("quality")
        name = self._name_clause()
        return CreateSphere(radius, placement, quality, name, span=self._finish())

    def _stmt_hypar(self) -> CreateHypar:
        plan_width = self._quantity("plan width")
        plan_depth = self._quantity("plan depth")
        self._expect_kw("corners")
        corners = (
            self._quantity("corner height"),
            self._quantity("corner height"),
            self._quantity("corner height"),
            self._quantity("corner height"),
        )
        self._expect_kw("thickness")
        thickness = self._quantity("thickness")
        name = self._name_clause()
        return CreateHypar(
            plan_width, plan_depth, corners, thickness, name, span=self._finish()
        )

    def _stmt_grid(self) -> CreateGrid:
        rows = self._int("row count")
        cols = self._int("column count")
        self._expect_kw("footprint")
        footprint = (self._quantity("footprint width"), self._quantity("footprint depth"))
        self._expect_kw("height")
        height = self._quantity("height")
        self._expect_kw("spacing")
        spacing = self._quantity("spacing")
        name = self._name_clause()
        return CreateGrid(
            rows, cols, footprint, height, spacing, name, span=self._finish()
        )

    def _boolop(self, kind: str) -> BooleanOp:
        a = self._ident("first operand")
        b = self._ident("second operand")
        name = self._name_clause()
        return BooleanOp(kind, a, b, name, span=self._finish())

    def _stmt_union(self) -> BooleanOp:
        return self._boolop("union")

    def _stmt_intersect(self) -> BooleanOp:
        return self._boolop("intersect")

    def _stmt_difference(self) -> BooleanOp:
        return self._boolop("difference")

    def _stmt_move(self) -> Move:
        target = self._ident("move target")
        dx = self._quantity("x offset")
        dy = self._quantity("y offset")
        dz = self._quantity("z offset")
        return Move(target, (dx, dy, dz), span=self._finish())

    def _stmt_delete(self) -> Delete:
        return Delete(self._ident("delete target"), span=self._finish())

    def _stmt_bake(self) -> Bake:
        return Bake(self._ident("bake target"), span=self._finish())

    def _stmt_sunstudy(self) -> SunStudy:
        self._expect_kw("lat")
        latitude = self._float("latitude")
        self._expect_kw("lon")
        longitude = self._float("longitude")
        self._expect_kw("date")
        date = self._date()
        interval = 10
        if self._accept_kw("interval"):
            interval = self._int("interval")
        cell = 1.0
        if self._accept_kw("cell"):
            cell = self._float("cell size")
        return SunStudy(latitude, longitude, date, interval, cell, span=self._finish())

    def _stmt_undo(self) -> Undo:
        return Undo(span=self._finish())
