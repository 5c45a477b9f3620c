"""Tokenizer for the command language.

Produces a flat token list with byte offsets.  Units are attached to
number tokens when written without a space (``0.3m``); a free-standing
``m``/``cm`` after a number is handled by the parser, so both spellings
work.  Dates are matched before numbers so ``2026-06-21`` never lexes
as three signed numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .errors import LexError

KEYWORDS = frozenset(
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
        "name",
        "at",
        "on",
        "edge",
        "random",
        "corners",
        "thickness",
        "footprint",
        "height",
        "spacing",
        "lat",
        "lon",
        "date",
        "interval",
        "cell",
        "quality",
    }
)

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r]+)
    | (?P<comment>\#[^\n]*)
    | (?P<nl>\n)
    | (?P<date>\d{4}-\d{2}-\d{2}(?![0-9A-Za-z_.-]))
    | (?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?P<unit>cm|m)?(?![0-9A-Za-z_.]))
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    """One lexeme.  ``offset`` is the byte offset of its first character."""

    kind: str  # "kw" | "ident" | "num" | "date" | "nl"
    text: str
    offset: int
    value: Optional[float] = None
    unit: Optional[str] = None

    @property
    def end(self) -> int:
        return self.offset + len(self.text.encode("utf-8"))


def tokenize(source: str) -> List[Token]:
    """Lex ``source`` into tokens or raise :class:`LexError`.

    Total over all inputs: every string either lexes or raises, never
    crashes or hangs.
    """
    tokens: List[Token] = []
    pos = 0
    byte_off = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            ch = source[pos]
            numeric_start = ch.isdigit() or (
                ch in "+-." and pos + 1 < n and (source[pos + 1].isdigit() or source[pos + 1] == ".")
            )
            if numeric_start:
                raise LexError("malformed number or unit", byte_off)
            raise LexError(f"illegal character {ch!r}", byte_off)
        text = m.group(0)
        if m.lastgroup != "ws" and m.lastgroup != "comment":
            kind = m.lastgroup
            if kind == "ident":
                word = text
                tokens.append(Token("kw" if word in KEYWORDS else "ident", word, byte_off))
            elif kind == "num" or kind == "unit":
                unit = m.group("unit")
                num_text = text[: -len(unit)] if unit else text
                tokens.append(Token("num", text, byte_off, value=float(num_text), unit=unit))
            elif kind == "date":
                tokens.append(Token("date", text, byte_off))
            else:
                tokens.append(Token("nl", text, byte_off))
        pos = m.end()
        byte_off += len(text.encode("utf-8"))
    return tokens
