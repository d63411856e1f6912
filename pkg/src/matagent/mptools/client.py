"""Materials Project endpoint client: query execution and document parsing."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .errors import QueryError
from .http import HttpClient, HttpResponse
from .validation import MPQuery

DEFAULT_BASE_URL = "https://api.materialsproject.org"
MP_API_KEY_ENV = "MP_API_KEY"


@dataclass(frozen=True)
class MPDocument:
    material_id: str
    payload: dict[str, Any]
    provenance: dict[str, Any] = field(compare=False, default_factory=dict)


def _excerpt(text: str, limit: int = 160) -> str:
    text = " ".join(text.split())
    return text if len(text) <= limit else text[: limit - 3] + "..."


class MpClient:
    """Executes validated queries against one MP-style base URL."""

    def __init__(self, http: HttpClient, base_url: str = DEFAULT_BASE_URL,
                 api_key: str = "", clock=time.time):
        self.http = http
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.clock = clock

    def execute_query(self, q: MPQuery) -> list[MPDocument]:
        """GET the resolved endpoint; empty results are a success.

        Raises QueryError (observation-shaped) for any non-2xx response or a
        malformed envelope.
        """
        headers = {"X-API-KEY": self.api_key} if self.api_key else {}
        url = self.base_url + q.resolved_url
        response: HttpResponse = self.http.get(url, headers=headers)

        if response.status == 429:
            retry_after = None
            raw = response.headers.get("Retry-After") or response.headers.get("retry-after")
            if raw is not None:
                try:
                    retry_after = float(raw)
                except ValueError:
                    retry_after = None
            raise QueryError(q.tool, 429, _excerpt(response.body_text), retry_after=retry_after)
        if response.status != 200:
            raise QueryError(q.tool, response.status, _excerpt(response.body_text))

        try:
            envelope = response.json()
        except json.JSONDecodeError:
            raise QueryError(q.tool, response.status, f"unparsable response body: {_excerpt(response.body_text)}")
        if not isinstance(envelope, dict) or not isinstance(envelope.get("data"), list):
            raise QueryError(q.tool, response.status, "response envelope has no `data` array")

        retrieved_at = self.clock()
        docs = []
        for item in envelope["data"]:
            if not isinstance(item, dict):
                raise QueryError(q.tool, response.status, "response `data` items must be objects")
            docs.append(
                MPDocument(
                    material_id=str(item.get("material_id", "")),
                    payload=item,
                    provenance={"endpoint": q.endpoint_path, "retrieved_at": retrieved_at},
                )
            )
        return docs
