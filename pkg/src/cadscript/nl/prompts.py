"""Prompt assembly for translation providers.

The system section embeds the authoritative grammar text plus five
worked utterance-to-program examples; the user section carries the
utterance and a scene summary; a feedback section appears only on
retries and quotes the previous candidate and its error messages
verbatim.  Total bundle size is bounded so a runaway context cannot
silently grow requests.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..dsl import GRAMMAR_TEXT
from .errors import EmptyCandidate, EmptyUtterance, PromptTooLarge

PROMPT_CHAR_LIMIT = 16_000

_EXAMPLES: Tuple[Tuple[str, str], ...] = (
    (
        "Create a 100x100x30 cm box, which is intersected by a sphere of 30 cm"
        " radius at a random edge. Bake their union on Rhino",
        "box 1 1 0.3 name b1\n"
        "sphere 0.3 on edge b1 random name s1\n"
        "union b1 s1 name u1\n"
        "bake u1",
    ),
    (
        "Design a pavilion with a hyperbolic canopy, inspired by the Candela structures",
        "hypar 10 10 corners 3 6 6 3 thickness 0.2 name canopy",
    ),
    (
        "Generate a grid of buildings 15 meters high, spaced 20 meters apart,"
        " and simulate the sunlight paths during the UK summer solstice",
        "grid 5 5 footprint 10 10 height 15 spacing 20 name bldg\n"
        "sunstudy lat 52.92 lon -1.48 date {year}-06-21 interval 10 cell 1",
    ),
    (
        "make the canopy corners 2 meters higher",
        "delete canopy\n"
        "hypar 10 10 corners 5 8 8 5 thickness 0.2 name canopy",
    ),
    (
        "Remove the sphere s1 and move the box b1 up by 2 meters",
        "delete s1\n"
        "move b1 0 0 2",
    ),
)


def _system_section() -> str:
    year = dt.date.today().year
    parts = [
        "You translate one natural-language CAD request into the command"
        " language below.  Reply with a single fenced code block containing"
        " only commands, one per line, and nothing outside the block.",
        "",
        GRAMMAR_TEXT.rstrip(),
        "",
        "Worked examples:",
    ]
    for i, (utterance, program) in enumerate(_EXAMPLES, start=1):
        parts.append(f'{i}. "{utterance}"')
        parts.append("```")
        parts.append(program.format(year=year))
        parts.append("```")
    return "\n".join(parts) + "\n"


SYSTEM_SECTION = _system_section()


@dataclass(frozen=True)
class NLRequest:
    """One translation request: the utterance plus scene context."""

    utterance: str
    context: str = ""
    units_hint: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.utterance.strip():
            raise EmptyUtterance("utterance is empty")


@dataclass(frozen=True)
class PromptBundle:
    """Assembled prompt sections; ``feedback`` is None on the first attempt."""

    system: str
    user: str
    feedback: Optional[str]
    utterance: str

    @property
    def total_chars(self) -> int:
        return len(self.system) + len(self.user) + len(self.feedback or "")


def build_prompt(
    request: NLRequest,
    prior: Optional[Tuple[str, Sequence[str]]] = None,
) -> PromptBundle:
    """Deterministic bundle for one attempt.

    ``prior`` is the previous (candidate, error messages) pair; its
    messages are quoted verbatim so the provider sees exactly what the
    validator said.
    """
    user_lines = []
    if request.context:
        user_lines.append("Current scene:")
        user_lines.append(request.context.rstrip())
    if request.units_hint:
        user_lines.append(f"Preferred units: {request.units_hint}")
    user_lines.append(f"Request: {request.utterance.strip()}")
    user = "\n".join(user_lines) + "\n"

    feedback = None
    if prior is not None:
        candidate, errors = prior
        lines = ["Your previous reply was rejected.", "Previous reply:", candidate.rstrip()]
        lines.append("Errors:")
        lines.extend(f"- {message}" for message in errors)
        lines.append("Reply again with a corrected program.")
        feedback = "\n".join(lines) + "\n"

    bundle = PromptBundle(SYSTEM_SECTION, user, feedback, request.utterance.strip())
    if bundle.total_chars > PROMPT_CHAR_LIMIT:
        raise PromptTooLarge(
            f"prompt bundle is {bundle.total_chars} characters"
            f" (limit {PROMPT_CHAR_LIMIT})"
        )
    return bundle


_FENCE_RE = re.compile(r"```[^\n]*\n(.*?)```", re.DOTALL)


def sanitize_candidate(reply: str) -> str:
    """Extract the candidate program text from a provider reply.

    Takes the first fenced code block if one exists, else the whole
    reply; content inside the chosen region is only trimmed at the
    ends, never altered.
    """
    m = _FENCE_RE.search(reply)
    candidate = (m.group(1) if m else reply).strip()
    if not candidate:
        raise EmptyCandidate("provider reply contained no candidate text")
    return candidate
