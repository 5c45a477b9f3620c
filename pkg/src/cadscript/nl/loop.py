"""The bounded translate-check-feedback repair loop.

Candidates coming back from a provider are data, never code: the only
path into the kernel is ``parse`` then ``validate``, and the resulting
program is returned, not executed.  Each attempt is logged with its
error messages; retries quote those messages verbatim in the feedback
section of the next prompt.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..dsl import DslError, SceneContext, ValidatedProgram, ValidationError, parse, validate
from .errors import (
    EmptyCandidate,
    ProviderUnavailable,
    TranslationFailed,
    UnsupportedPhrase,
)
from .prompts import NLRequest, build_prompt
from .providers import DEFAULT_MAX_ATTEMPTS
from .prompts import sanitize_candidate


@dataclass(frozen=True)
class Attempt:
    """One loop iteration: the candidate text and its error messages."""

    candidate: str
    errors: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class TranslationOutcome:
    """Successful translation with the full attempts log."""

    result: ValidatedProgram
    attempts: Tuple[Attempt, ...]
    provider_id: str


def translate(
    request: NLRequest,
    provider,
    ctx: Optional[SceneContext] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> TranslationOutcome:
    """Translate ``request`` against scene ``ctx`` using ``provider``.

    Raises :class:`ProviderUnavailable` on transport failure and
    :class:`TranslationFailed` when every attempt produced an invalid
    program; both carry the attempts log.  The returned program has
    been validated but never executed.
    """
    attempts: List[Attempt] = []
    prior: Optional[Tuple[str, Tuple[str, ...]]] = None
    for _ in range(max_attempts):
        bundle = build_prompt(request, prior)
        try:
            reply = provider.complete(bundle)
        except UnsupportedPhrase as exc:
            attempts.append(Attempt("", (str(exc),)))
            break
        except ProviderUnavailable as exc:
            raise ProviderUnavailable(str(exc), tuple(attempts)) from exc

        try:
            candidate = sanitize_candidate(reply)
        except EmptyCandidate as exc:
            attempts.append(Attempt("", (str(exc),)))
            prior = ("", (str(exc),))
            continue

        try:
            program = parse(candidate)
            validated = validate(program, ctx)
        except ValidationError as exc:
            errors = tuple(e.message for e in exc.errors)
        except DslError as exc:
            errors = (str(exc),)
        else:
            attempts.append(Attempt(candidate, ()))
            return TranslationOutcome(validated, tuple(attempts), provider.provider_id)

        attempts.append(Attempt(candidate, errors))
        prior = (candidate, errors)
        if getattr(provider, "deterministic", False):
            break
    raise TranslationFailed(
        f"translation failed after {len(attempts)} attempt"
        f"{'s' if len(attempts) != 1 else ''}",
        tuple(attempts),
    )
