"""Judge backends: remote text endpoint, recorded replay, deterministic stubs.

A backend is anything with a ``judge_id`` and a ``complete(prompt) -> str``.
``invoke_judge`` adds the retry/backoff policy on top and converts repeated
transient failures into ``JudgeUnavailable``.
"""

from __future__ import annotations

import itertools
import time
from pathlib import Path
from typing import Callable, Protocol, runtime_checkable

import httpx

from ..errors import JudgeUnavailable


@runtime_checkable
class JudgeBackend(Protocol):
    judge_id: str

    def complete(self, prompt: str) -> str: ...


class JudgeTransientError(Exception):
    """Raised by backends for failures worth retrying."""


class StubJudgeBackend:
    """Deterministic canned responses for tests and calibration smoke runs."""

    def __init__(self, responses, judge_id: str = "stub"):
        self.judge_id = judge_id
        if callable(responses):
            self._next = responses
        else:
            if isinstance(responses, str):
                responses = [responses]
            cycle = itertools.cycle(list(responses))
            self._next = lambda prompt: next(cycle)

    def complete(self, prompt: str) -> str:
        return self._next(prompt)

    @classmethod
    def constant_score(cls, score: int, judge_id: str | None = None) -> "StubJudgeBackend":
        return cls(_score_response(score), judge_id=judge_id or f"stub-const-{score}")

    @classmethod
    def score_cycle(cls, scores: list[int], judge_id: str | None = None) -> "StubJudgeBackend":
        label = "-".join(str(s) for s in scores)
        return cls([_score_response(s) for s in scores], judge_id=judge_id or f"stub-cycle-{label}")


def _score_response(score: int) -> str:
    return f"Score: {score}\n###Reasoning canned stub verdict ###End_Reasoning\nTotal hallucinations: 0"


class RecordedJudgeBackend:
    """Replays stored responses, one per file (or a single file repeatedly)."""

    def __init__(self, path: str | Path, judge_id: str = "recorded"):
        self.judge_id = judge_id
        target = Path(path)
        if target.is_dir():
            self._responses = [p.read_text(encoding="utf-8") for p in sorted(target.iterdir())
                               if p.is_file()]
            self._cycle = iter(self._responses)
            self._single = None
        else:
            self._single = target.read_text(encoding="utf-8")
            self._responses = [self._single]
            self._cycle = None

    def complete(self, prompt: str) -> str:
        if self._single is not None:
            return self._single
        try:
            return next(self._cycle)
        except StopIteration:
            raise JudgeTransientError("recorded responses exhausted") from None


class HttpJudgeBackend:
    """Plain-text completion endpoint: POST the prompt, read text back.

    The response may be raw text or a JSON object carrying the text under
    ``text``, ``completion`` or ``response``.
    """

    def __init__(self, endpoint: str, judge_id: str = "remote", timeout: float = 60.0,
                 headers: dict | None = None, generation_params: dict | None = None):
        self.judge_id = judge_id
        self.endpoint = endpoint
        self.timeout = timeout
        self.headers = dict(headers or {})
        self.generation_params = dict(generation_params or {})

    def complete(self, prompt: str) -> str:
        payload = {"prompt": prompt, **self.generation_params}
        try:
            response = httpx.post(self.endpoint, json=payload, timeout=self.timeout,
                                  headers=self.headers)
        except httpx.HTTPError as exc:
            raise JudgeTransientError(f"judge endpoint unreachable: {exc}") from exc
        if response.status_code >= 500:
            raise JudgeTransientError(f"judge endpoint returned {response.status_code}")
        if response.status_code >= 400:
            raise JudgeUnavailable(f"judge endpoint rejected request: {response.status_code}")
        content_type = response.headers.get("content-type", "")
        if "json" in content_type:
            data = response.json()
            for key in ("text", "completion", "response"):
                if isinstance(data, dict) and key in data:
                    return str(data[key])
            return str(data)
        return response.text


def invoke_judge(prompt: str, backend: JudgeBackend, retries: int = 3,
                 backoff: float = 0.5, sleep: Callable[[float], None] = time.sleep) -> str:
    """Call the backend with retry/backoff; raise JudgeUnavailable when the
    retry budget is exhausted."""
    last: Exception | None = None
    for attempt in range(max(1, retries)):
        try:
            return backend.complete(prompt)
        except JudgeTransientError as exc:
            last = exc
            if attempt + 1 < retries:
                sleep(backoff * (2 ** attempt))
    raise JudgeUnavailable(f"judge backend {backend.judge_id} failed after {retries} attempts: {last}")
