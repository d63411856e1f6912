"""Chat-completion backends: a live OpenAI-style HTTP client and a
deterministic record/replay pair for offline runs.

Replay fixtures are JSON-lines: a header line carrying the session id, then
one entry per completion in call order. Entries are keyed by call order per
(session, agent) because prompts embed history and would hash brittle; the
prompt digest is recorded only to flag drift.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import httpx

from ..react.prompting import Prompt

logger = logging.getLogger(__name__)


class LlmError(Exception):
    pass


class AuthError(LlmError):
    pass


class TransportError(LlmError):
    def __init__(self, message: str, attempts: int, retryable: bool = True):
        super().__init__(message)
        self.attempts = attempts
        self.retryable = retryable


class FixtureExhausted(LlmError):
    pass


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # "live" | "replay"
    base_url: str = ""
    model: str = ""
    temperature: float = 0.0
    api_key_env: str = "LLM_API_KEY"
    fixture_path: str = ""
    request_timeout: float = 60.0
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.kind not in ("live", "replay"):
            raise ValueError(f"backend kind must be live or replay, got {self.kind!r}")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.kind == "live" and (not self.base_url or not self.model):
            raise ValueError("live backends need base_url and model")
        if self.kind == "replay" and not self.fixture_path:
            raise ValueError("replay backends need fixture_path")


def prompt_digest(prompt: Prompt) -> str:
    return hashlib.sha256(prompt.text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class FixtureEntry:
    agent: str
    prompt_digest: str
    completion: str


@dataclass
class TranscriptFixture:
    session_id: str
    entries: list[FixtureEntry] = field(default_factory=list)

    @classmethod
    def load(cls, path: str | Path) -> "TranscriptFixture":
        lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
        if not lines:
            return cls(session_id=Path(path).stem)
        header = json.loads(lines[0])
        if "session_id" not in header:
            raise ValueError(f"fixture {path} is missing its session header line")
        entries = []
        for ln in lines[1:]:
            raw = json.loads(ln)
            entries.append(
                FixtureEntry(
                    agent=raw["agent"],
                    prompt_digest=raw.get("prompt_digest", ""),
                    completion=raw["completion"],
                )
            )
        return cls(session_id=header["session_id"], entries=entries)

    def dump(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"session_id": self.session_id}) + "\n")
            for e in self.entries:
                fh.write(
                    json.dumps(
                        {"agent": e.agent, "prompt_digest": e.prompt_digest, "completion": e.completion},
                        ensure_ascii=False,
                    )
                    + "\n"
                )


def truncate_at_stop(text: str, stop: Sequence[str]) -> str:
    cut = len(text)
    for s in stop:
        pos = text.find(s)
        if pos != -1:
            cut = min(cut, pos)
    return text[:cut]


Transport = Callable[[], httpx.Client]


class LiveBackend:
    """One chat-completion request per call against an OpenAI-style endpoint."""

    def __init__(self, config: BackendConfig, transport: Transport | None = None,
                 sleep: Callable[[float], None] = time.sleep):
        if config.kind != "live":
            raise ValueError("LiveBackend requires a live config")
        self.config = config
        self._make_client = transport or (lambda: httpx.Client(timeout=config.request_timeout))
        self._sleep = sleep

    def _api_key(self) -> str:
        key = os.environ.get(self.config.api_key_env, "")
        if not key:
            raise AuthError(f"environment variable {self.config.api_key_env} is not set")
        return key

    def complete(self, prompt: Prompt, *, agent: str, session: str,
                 stop: Sequence[str] = ()) -> str:
        key = self._api_key()
        payload = {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": [
                {"role": "system", "content": prompt.system},
                {"role": "user", "content": prompt.user},
            ],
        }
        if stop:
            payload["stop"] = list(stop)
        url = self.config.base_url.rstrip("/") + "/chat/completions"

        last_error: Exception | None = None
        for attempt in range(1, self.config.max_retries + 1):
            try:
                with self._make_client() as client:
                    response = client.post(
                        url, json=payload, headers={"Authorization": f"Bearer {key}"}
                    )
            except httpx.HTTPError as exc:
                last_error = exc
                if attempt < self.config.max_retries:
                    self._sleep(0.5 * 2 ** (attempt - 1))
                continue
            if response.status_code in (401, 403):
                raise AuthError(f"backend rejected credentials (HTTP {response.status_code})")
            if response.status_code >= 500:
                last_error = TransportError(
                    f"HTTP {response.status_code} from backend", attempts=attempt
                )
                if attempt < self.config.max_retries:
                    self._sleep(0.5 * 2 ** (attempt - 1))
                continue
            if response.status_code != 200:
                raise TransportError(
                    f"HTTP {response.status_code}: {response.text[:200]}",
                    attempts=attempt,
                    retryable=False,
                )
            body = response.json()
            text = body["choices"][0]["message"]["content"]
            return truncate_at_stop(text, stop)
        raise TransportError(
            f"backend unreachable after {self.config.max_retries} attempts: {last_error}",
            attempts=self.config.max_retries,
        )


class ReplayBackend:
    """Serves fixture completions in call order per (session, agent)."""

    def __init__(self, fixture: TranscriptFixture):
        self.fixture = fixture
        self._by_agent: dict[str, list[FixtureEntry]] = {}
        for e in fixture.entries:
            self._by_agent.setdefault(e.agent, []).append(e)
        self._cursors: dict[tuple[str, str], int] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_path(cls, path: str | Path) -> "ReplayBackend":
        return cls(TranscriptFixture.load(path))

    def complete(self, prompt: Prompt, *, agent: str, session: str,
                 stop: Sequence[str] = ()) -> str:
        with self._lock:
            entries = self._by_agent.get(agent, [])
            cursor = self._cursors.get((session, agent), 0)
            if cursor >= len(entries):
                raise FixtureExhausted(
                    f"fixture {self.fixture.session_id!r} has no completion #{cursor + 1} "
                    f"for agent {agent!r}"
                )
            self._cursors[(session, agent)] = cursor + 1
            entry = entries[cursor]
        digest = prompt_digest(prompt)
        if entry.prompt_digest and entry.prompt_digest != digest:
            logger.warning(
                "prompt drift for %s/%s call %d: fixture digest %s, live digest %s",
                session, agent, cursor, entry.prompt_digest, digest,
            )
        return truncate_at_stop(entry.completion, stop)


class RecordingBackend:
    """Wraps a backend, appending every (prompt, completion) pair to a fixture file."""

    def __init__(self, inner, sink: str | Path, session_id: str = "recorded"):
        self.inner = inner
        self.sink = Path(sink)
        self._lock = threading.Lock()
        if not self.sink.exists() or not self.sink.read_text().strip():
            self.sink.write_text(json.dumps({"session_id": session_id}) + "\n")

    def complete(self, prompt: Prompt, *, agent: str, session: str,
                 stop: Sequence[str] = ()) -> str:
        completion = self.inner.complete(prompt, agent=agent, session=session, stop=stop)
        line = json.dumps(
            {"agent": agent, "prompt_digest": prompt_digest(prompt), "completion": completion},
            ensure_ascii=False,
        )
        with self._lock, open(self.sink, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
        return completion


def record(config: BackendConfig, sink: str | Path,
           transport: Transport | None = None) -> RecordingBackend:
    """Recording wrapper over a live backend."""
    if config.kind != "live":
        raise ValueError("recording requires a live backend config")
    return RecordingBackend(LiveBackend(config, transport=transport), sink)


def build_backend(config: BackendConfig, transport: Transport | None = None):
    """Backend for a config; replay backends never touch the transport."""
    if config.kind == "replay":
        return ReplayBackend.from_path(config.fixture_path)
    return LiveBackend(config, transport=transport)
