"""Errors raised by the translation bridge."""

from __future__ import annotations

from typing import TYPE_CHECKING, Tuple

if TYPE_CHECKING:
    from .loop import Attempt


class NlError(Exception):
    """Base class for translation-bridge failures."""


class EmptyUtterance(NlError):
    """The request utterance was empty after trimming."""


class PromptTooLarge(NlError):
    """The assembled prompt bundle exceeds the character bound."""


class EmptyCandidate(NlError):
    """The provider reply contained no usable candidate text."""


class UnsupportedPhrase(NlError):
    """The offline translator has no rule for this utterance.

    ``templates`` lists the supported phrasings so callers can show
    the user what would have worked.
    """

    def __init__(self, utterance: str, templates: Tuple[str, ...]) -> None:
        listing = "; ".join(templates)
        super().__init__(f"no offline rule matches {utterance!r}; supported: {listing}")
        self.utterance = utterance
        self.templates = templates


class _AttemptsError(NlError):
    """Base for failures that carry the per-attempt log."""

    def __init__(self, message: str, attempts: Tuple["Attempt", ...]) -> None:
        super().__init__(message)
        self.attempts = attempts


class ProviderUnavailable(_AttemptsError):
    """Network, auth or timeout failure talking to the provider."""


class TranslationFailed(_AttemptsError):
    """Every attempt produced an invalid program."""
