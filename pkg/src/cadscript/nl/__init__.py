"""Natural-language to command-language translation."""

from .errors import (
    EmptyCandidate,
    EmptyUtterance,
    NlError,
    PromptTooLarge,
    ProviderUnavailable,
    TranslationFailed,
    UnsupportedPhrase,
)
from .loop import Attempt, TranslationOutcome, translate
from .offline import OFFLINE_TEMPLATES, offline_translate
from .prompts import (
    PROMPT_CHAR_LIMIT,
    NLRequest,
    PromptBundle,
    build_prompt,
    sanitize_candidate,
)
from .providers import (
    ENV_ENDPOINT,
    ENV_KEY_VAR,
    ENV_MODEL,
    HttpProvider,
    OfflineProvider,
    ProviderConfig,
    ScriptedStubProvider,
    provider_from_env,
)

__all__ = [
    "Attempt",
    "ENV_ENDPOINT",
    "ENV_KEY_VAR",
    "ENV_MODEL",
    "EmptyCandidate",
    "EmptyUtterance",
    "HttpProvider",
    "NLRequest",
    "NlError",
    "OFFLINE_TEMPLATES",
    "OfflineProvider",
    "PROMPT_CHAR_LIMIT",
    "PromptBundle",
    "PromptTooLarge",
    "ProviderConfig",
    "ProviderUnavailable",
    "ScriptedStubProvider",
    "TranslationFailed",
    "TranslationOutcome",
    "UnsupportedPhrase",
    "build_prompt",
    "offline_translate",
    "provider_from_env",
    "sanitize_candidate",
    "translate",
]
