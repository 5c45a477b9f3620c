"""Translation providers: hosted chat endpoint, scripted stub, offline rules.

A provider exposes ``provider_id`` and ``complete(bundle) -> reply
text``.  The hosted provider speaks a chat-completions-style JSON
shape over HTTP; endpoint and model come from configuration so any
compatible service works.  API keys are referenced by environment
variable *name* and read only at request time — the key itself is
never stored on objects, logged, or serialized.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import requests

from ..dsl import pretty_print
from .errors import ProviderUnavailable
from .offline import offline_translate
from .prompts import PromptBundle

ENV_ENDPOINT = "CADGPT_ENDPOINT"
ENV_MODEL = "CADGPT_MODEL"
ENV_KEY_VAR = "CADGPT_API_KEY_VAR"

DEFAULT_TIMEOUT_S = 60.0
DEFAULT_MAX_ATTEMPTS = 3


@dataclass(frozen=True)
class ProviderConfig:
    """Connection settings; ``api_key_env`` names the variable holding the key."""

    endpoint: str
    model: str
    api_key_env: Optional[str] = None
    timeout_s: float = DEFAULT_TIMEOUT_S
    max_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self) -> None:
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    @classmethod
    def from_env(cls) -> Optional["ProviderConfig"]:
        """Build from ``CADGPT_*`` variables; None when no endpoint is set."""
        endpoint = os.environ.get(ENV_ENDPOINT)
        if not endpoint:
            return None
        return cls(
            endpoint=endpoint,
            model=os.environ.get(ENV_MODEL, "gpt-4"),
            api_key_env=os.environ.get(ENV_KEY_VAR) or None,
        )


class HttpProvider:
    """Chat-completions-style HTTP provider."""

    # Deterministic providers stop the repair loop after one attempt.
    deterministic = False

    def __init__(self, config: ProviderConfig) -> None:
        self.config = config
        self.provider_id = f"http:{config.model}"

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.config.api_key_env:
            key = os.environ.get(self.config.api_key_env)
            if not key:
                raise ProviderUnavailable(
                    f"api key variable {self.config.api_key_env!r} is not set", ()
                )
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, bundle: PromptBundle) -> str:
        user = bundle.user if bundle.feedback is None else bundle.user + "\n" + bundle.feedback
        payload = {
            "model": self.config.model,
            "messages": [
                {"role": "system", "content": bundle.system},
                {"role": "user", "content": user},
            ],
        }
        try:
            response = requests.post(
                self.config.endpoint,
                json=payload,
                headers=self._headers(),
                timeout=self.config.timeout_s,
            )
            response.raise_for_status()
            return response.json()["choices"][0]["message"]["content"]
        except ProviderUnavailable:
            raise
        except (requests.RequestException, KeyError, IndexError, ValueError) as exc:
            # Never include headers or payload here: the message may be logged.
            raise ProviderUnavailable(f"provider request failed: {exc}", ()) from exc


class ScriptedStubProvider:
    """Replays canned replies from a script, one per attempt.

    The script file holds reply texts separated by lines containing
    only ``---``; a list of strings works too.  Raises when the script
    runs out, which in a correct test setup never happens.
    """

    deterministic = False
    provider_id = "stub"

    def __init__(self, replies: Sequence[str]) -> None:
        self._replies: List[str] = list(replies)
        self._next = 0

    @classmethod
    def from_script(cls, path: str) -> "ScriptedStubProvider":
        text = Path(path).read_text(encoding="utf-8")
        replies: List[str] = []
        current: List[str] = []
        for line in text.splitlines():
            if line.strip() == "---":
                replies.append("\n".join(current))
                current = []
            else:
                current.append(line)
        replies.append("\n".join(current))
        return cls(replies)

    def complete(self, bundle: PromptBundle) -> str:
        if self._next >= len(self._replies):
            raise ProviderUnavailable("stub script exhausted", ())
        reply = self._replies[self._next]
        self._next += 1
        return reply


class OfflineProvider:
    """Wraps the pattern-rule translator in the provider interface."""

    deterministic = True
    provider_id = "offline"

    def complete(self, bundle: PromptBundle) -> str:
        return pretty_print(offline_translate(bundle.utterance))


def provider_from_env() -> object:
    """The configured HTTP provider, or the offline rules when unset."""
    config = ProviderConfig.from_env()
    if config is None:
        return OfflineProvider()
    return HttpProvider(config)
