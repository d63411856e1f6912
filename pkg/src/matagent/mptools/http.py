"""Minimal HTTP abstraction so endpoint clients run live or off fixtures.

Fixture files are JSON-lines of {"request": "GET <path>?<sorted query>",
"status": ..., "body": ...}; lookups match the canonical request line.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Protocol

import httpx


@dataclass(frozen=True)
class HttpResponse:
    status: int
    body_text: str
    headers: Mapping[str, str]

    def json(self):
        return json.loads(self.body_text)


class HttpClient(Protocol):
    def get(self, url: str, headers: Mapping[str, str] | None = None,
            timeout: float = 30.0) -> HttpResponse: ...


class TokenBucket:
    """Simple token-bucket limiter shared by live clients."""

    def __init__(self, rate_per_s: float, capacity: float | None = None,
                 clock=time.monotonic, sleep=time.sleep):
        self.rate = rate_per_s
        self.capacity = capacity if capacity is not None else rate_per_s
        self.tokens = self.capacity
        self.updated = clock()
        self.clock = clock
        self.sleep = sleep
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = self.clock()
                self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
                self.updated = now
                if self.tokens >= 1.0:
                    self.tokens -= 1.0
                    return
                wait = (1.0 - self.tokens) / self.rate
            self.sleep(wait)


class LiveHttpClient:
    def __init__(self, limiter: TokenBucket | None = None):
        self.limiter = limiter

    def get(self, url: str, headers: Mapping[str, str] | None = None,
            timeout: float = 30.0) -> HttpResponse:
        if self.limiter is not None:
            self.limiter.acquire()
        response = httpx.get(url, headers=dict(headers or {}), timeout=timeout)
        return HttpResponse(
            status=response.status_code,
            body_text=response.text,
            headers=dict(response.headers),
        )


def canonical_request_line(url: str) -> str:
    return f"GET {url}"


class FixtureHttpClient:
    """Replays recorded responses keyed by the canonical request line."""

    def __init__(self, path: str | Path):
        self.responses: dict[str, HttpResponse] = {}
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            body = raw.get("body", "")
            body_text = body if isinstance(body, str) else json.dumps(body)
            self.responses[raw["request"]] = HttpResponse(
                status=int(raw.get("status", 200)),
                body_text=body_text,
                headers={str(k): str(v) for k, v in raw.get("headers", {}).items()},
            )
        self.requests_seen: list[str] = []

    def get(self, url: str, headers: Mapping[str, str] | None = None,
            timeout: float = 30.0) -> HttpResponse:
        line = canonical_request_line(url)
        self.requests_seen.append(line)
        if line not in self.responses:
            raise KeyError(
                f"no fixture response for {line!r}; recorded requests: "
                f"{sorted(self.responses)[:8]}"
            )
        return self.responses[line]
