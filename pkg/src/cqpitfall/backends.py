"""Text-generation backends.

``TextBackend`` is the pluggable contract. The mock backend answers every
prompt deterministically from the prompt's own content (bound templates
for question prompts, the axiom set for definition prompts), which keeps
the whole pipeline runnable offline and byte-reproducible. The HTTP
backend adapts any endpoint speaking ``{prompt, temperature, seed?} ->
{text}``.
"""

from __future__ import annotations

import os
import re
import time
from typing import Optional, Protocol

import httpx


class BackendError(RuntimeError):
    pass


class BackendUnreachable(BackendError):
    """Transport failures that survived the retry budget."""


class TextBackend(Protocol):
    backend_id: str

    def complete(self, prompt: str, temperature: Optional[float], seed: int) -> str:
        ...


_N_RE = re.compile(r"Just return (\d+) distinct CQs")
_BULLET_RE = re.compile(r"^- (.+)$")


class MockTemplateBackend:
    """Deterministic offline backend.

    For question prompts it returns the first ``n`` bound template lines
    verbatim (padding with numbered variants of the last line if the
    registry has fewer than ``n``). For definition prompts it folds the
    prompt's own axiom set into a fixed sentence.
    """

    backend_id = "mock"

    def complete(self, prompt: str, temperature: Optional[float], seed: int) -> str:
        if prompt.rstrip().endswith("Generated CQs:"):
            return self._answer_cq(prompt)
        if prompt.rstrip().endswith("Now, generate the description."):
            return self._answer_definition(prompt)
        raise BackendError("mock backend got an unrecognized prompt shape")

    def _answer_cq(self, prompt: str) -> str:
        m = _N_RE.search(prompt)
        if m is None:
            raise BackendError("question prompt without a count")
        n = int(m.group(1))
        bullets: list[str] = []
        in_template = False
        for line in prompt.splitlines():
            if line.startswith("Template:"):
                in_template = True
                continue
            if in_template:
                bullet = _BULLET_RE.match(line)
                if bullet is None:
                    break
                bullets.append(bullet.group(1))
        if not bullets:
            raise BackendError("question prompt without template lines")
        answers = bullets[:n]
        k = 2
        while len(answers) < n:
            answers.append(f"{bullets[-1]} (variant {k})")
            k += 1
        return " | ".join(answers)

    def _answer_definition(self, prompt: str) -> str:
        type_word = name = axiom_set = None
        for line in prompt.splitlines():
            if line.endswith(" description including information of axiom set."):
                type_word = line.split()[2]
            elif line.startswith("Axiom set: "):
                axiom_set = line[len("Axiom set: "):]
            elif " name: " in line and name is None:
                name = line.split(" name: ", 1)[1]
        if not (type_word and name and axiom_set):
            raise BackendError("definition prompt missing expected lines")
        return (f"The {type_word} {name} is characterized by the following "
                f"statements: {axiom_set}")


class HttpTextBackend:
    """JSON-over-HTTP adapter with exponential backoff on 429/5xx."""

    def __init__(
        self,
        url: Optional[str] = None,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
        max_attempts: Optional[int] = None,
        base_delay: Optional[float] = None,
        client: Optional[httpx.Client] = None,
    ):
        self.url = url or os.environ.get("CQPITFALL_TEXT_URL")
        if not self.url:
            raise BackendError("no text backend URL (set CQPITFALL_TEXT_URL)")
        self.api_key = api_key or os.environ.get("CQPITFALL_TEXT_API_KEY")
        self.timeout = timeout
        self.max_attempts = max_attempts if max_attempts is not None else int(
            os.environ.get("CQPITFALL_TEXT_RETRIES", "5"))
        self.base_delay = base_delay if base_delay is not None else float(
            os.environ.get("CQPITFALL_TEXT_BASE_DELAY", "0.5"))
        self._client = client or httpx.Client(timeout=timeout)
        self.backend_id = f"http:{self.url}"

    def complete(self, prompt: str, temperature: Optional[float], seed: int) -> str:
        payload: dict = {"prompt": prompt, "seed": seed}
        if temperature is not None:
            payload["temperature"] = temperature
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error: Optional[Exception] = None
        for attempt in range(self.max_attempts):
            try:
                response = self._client.post(self.url, json=payload, headers=headers)
            except httpx.HTTPError as exc:
                last_error = exc
                self._sleep(attempt)
                continue
            if response.status_code == 429 or response.status_code >= 500:
                last_error = BackendError(f"HTTP {response.status_code}")
                self._sleep(attempt)
                continue
            if response.status_code != 200:
                raise BackendError(f"text backend returned HTTP {response.status_code}")
            body = response.json()
            if "text" not in body:
                raise BackendError("text backend response missing 'text'")
            return body["text"]
        raise BackendUnreachable(f"text backend failed after "
                                 f"{self.max_attempts} attempts: {last_error}")

    def _sleep(self, attempt: int) -> None:
        time.sleep(min(self.base_delay * (2 ** attempt), 8.0))
