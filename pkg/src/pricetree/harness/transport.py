"""Model transports: live chat-completion HTTP, file replay, scripted mocks.

The harness never needs network access to be exercised: replay transports
serve recorded responses keyed by instance id, and the named mocks cover
the degenerate all-unknown / all-number / echo-gold behaviours.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path
from typing import Optional

import requests

from ..errors import (
    DatasetParseError,
    InvalidConfigError,
    TransientTransportError,
    TransportError,
)
from ..pipeline import ANSWERABLE, Dataset
from .prompts import Message, ModelProfile

BACKOFF_BASE_SECONDS = 0.5
BACKOFF_CAP_SECONDS = 30.0


def build_payload(profile: ModelProfile, messages: list[Message]) -> dict:
    """Chat-completion request body for one profile.

    Reasoning profiles use max_completion_tokens and reasoning_effort and
    must not carry a temperature.
    """
    payload: dict = {
        "model": profile.model,
        "messages": [{"role": m.role, "content": m.content} for m in messages],
    }
    if profile.is_reasoning:
        payload["max_completion_tokens"] = profile.max_completion_tokens
        payload["reasoning_effort"] = profile.reasoning_effort
    else:
        payload["max_tokens"] = profile.max_tokens
        payload["temperature"] = profile.temperature
    return payload


class LiveTransport:
    """POSTs to a chat-completion endpoint; auth comes from the environment."""

    def __init__(self, profile: ModelProfile):
        self.profile = profile
        self._session = requests.Session()

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.profile.api_key_env:
            key = os.environ.get(self.profile.api_key_env)
            if not key:
                raise TransportError(
                    f"environment variable {self.profile.api_key_env} is not set"
                )
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, messages: list[Message], instance_id: Optional[str] = None) -> str:
        payload = build_payload(self.profile, messages)
        try:
            resp = self._session.post(
                self.profile.endpoint,
                json=payload,
                headers=self._headers(),
                timeout=self.profile.timeout_seconds,
            )
        except requests.RequestException as exc:
            raise TransientTransportError(str(exc)) from exc
        if resp.status_code == 429 or resp.status_code >= 500:
            raise TransientTransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        if resp.status_code != 200:
            raise TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            return resp.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed completion response: {exc}") from exc


class ReplayTransport:
    """Serves recorded responses keyed by instance id."""

    def __init__(self, responses: dict[str, str]):
        self.responses = responses

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayTransport":
        responses: dict[str, str] = {}
        for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                responses[data["instanceId"]] = data["responseText"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DatasetParseError(f"{path} line {n}: {exc}") from exc
        return cls(responses)

    def complete(self, messages: list[Message], instance_id: Optional[str] = None) -> str:
        if instance_id not in self.responses:
            raise TransportError(f"replay file has no response for instance {instance_id!r}")
        return self.responses[instance_id]


class MockTransport:
    """Named scripted behaviours for offline pipeline checks.

    unknown   answers "Answer: unknown." to everything
    five      answers "Answer: 5" to everything
    gold      echoes each instance's gold answer, "unknown." when there is none
    """

    NAMES = ("unknown", "five", "gold")

    def __init__(self, name: str, gold_answers: Optional[dict[str, Optional[int]]] = None):
        if name not in self.NAMES:
            raise InvalidConfigError(f"unknown mock {name!r}, expected one of {self.NAMES}")
        if name == "gold" and gold_answers is None:
            raise InvalidConfigError("mock 'gold' needs the dataset's gold answers")
        self.name = name
        self.gold_answers = gold_answers or {}

    @classmethod
    def for_dataset(cls, name: str, dataset: Dataset) -> "MockTransport":
        gold = {
            inst.id: inst.gold_answer if inst.variant == ANSWERABLE else None
            for inst in dataset.instances
        }
        return cls(name, gold)

    def complete(self, messages: list[Message], instance_id: Optional[str] = None) -> str:
        if self.name == "unknown":
            return "Answer: unknown."
        if self.name == "five":
            return "Answer: 5"
        gold = self.gold_answers.get(instance_id)
        return "Answer: unknown." if gold is None else f"Answer: {gold}"


def make_transport(spec: str, profile: ModelProfile, dataset: Dataset):
    """Parse a transport spec: live | replay:<file> | mock:<name>."""
    if spec == "live":
        return LiveTransport(profile)
    kind, sep, arg = spec.partition(":")
    if kind == "replay" and sep:
        return ReplayTransport.from_file(arg)
    if kind == "mock" and sep:
        return MockTransport.for_dataset(arg, dataset)
    raise InvalidConfigError(
        f"transport must be live, replay:<file> or mock:<name>, got {spec!r}"
    )


def query_model(
    profile: ModelProfile,
    messages: list[Message],
    transport,
    instance_id: Optional[str] = None,
    sleep=time.sleep,
) -> tuple[str, float]:
    """One completion with capped exponential backoff on transient failures.

    Returns (response text, latency in milliseconds).  Raises TransportError
    once profile.max_retries retries are exhausted.
    """
    attempts = profile.max_retries + 1
    start = time.perf_counter()
    for attempt in range(attempts):
        try:
            text = transport.complete(messages, instance_id)
            return text, (time.perf_counter() - start) * 1000.0
        except TransientTransportError:
            if attempt == attempts - 1:
                raise
            sleep(min(BACKOFF_BASE_SECONDS * 2**attempt, BACKOFF_CAP_SECONDS))
    raise AssertionError("unreachable")
