"""Errors raised by the command language front end.

Error messages are part of the public contract: they are echoed back
to translation providers during repair loops and snapshot-tested, so
changing their wording is a breaking change.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .ast import Span


class DslError(Exception):
    """Base class for all command-language errors."""


class LexError(DslError):
    """Character-level error; ``offset`` is a byte offset into the source."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class ParseError(DslError):
    """Grammar-level error with the byte span of the offending region."""

    def __init__(self, message: str, span: Span) -> None:
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class SemanticError:
    """One validation finding.

    ``kind`` is a stable machine-readable tag (``unknown_identifier``,
    ``duplicate_name``, ``non_positive``, ``range``, ``wrong_kind``,
    ``limit``, ``misplaced``); ``message`` is the human/provider-facing
    text.
    """

    kind: str
    message: str
    span: Span


class ValidationError(DslError):
    """Raised by ``validate``; carries every finding, not just the first."""

    def __init__(self, errors: Tuple[SemanticError, ...]) -> None:
        super().__init__("; ".join(e.message for e in errors))
        self.errors = errors
