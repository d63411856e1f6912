"""Literature lookups: thin arXiv and Wikipedia search clients."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from urllib.parse import urlencode

from .errors import FetchError
from .http import HttpClient

ARXIV_URL = "https://export.arxiv.org/api/query"
WIKIPEDIA_URL = "https://en.wikipedia.org/w/api.php"

_ATOM = "{http://www.w3.org/2005/Atom}"
_TAGS = re.compile(r"<[^>]+>")


def _squash(text: str, limit: int = 400) -> str:
    text = " ".join(text.split())
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _arxiv(query: str, http: HttpClient, top_k: int) -> list[tuple[str, str]]:
    params = {"search_query": f"all:{query}", "start": "0", "max_results": str(top_k)}
    response = http.get(f"{ARXIV_URL}?{urlencode(params)}")
    if response.status != 200:
        raise FetchError("arxiv", f"HTTP {response.status}")
    try:
        root = ET.fromstring(response.body_text)
    except ET.ParseError as exc:
        raise FetchError("arxiv", f"unparsable feed: {exc}")
    results = []
    for entry in root.findall(f"{_ATOM}entry")[:top_k]:
        title = (entry.findtext(f"{_ATOM}title") or "").strip()
        summary = (entry.findtext(f"{_ATOM}summary") or "").strip()
        results.append((_squash(title), _squash(summary)))
    return results


def _wikipedia(query: str, http: HttpClient, top_k: int) -> list[tuple[str, str]]:
    params = {
        "action": "query",
        "list": "search",
        "srsearch": query,
        "srlimit": str(top_k),
        "format": "json",
    }
    response = http.get(f"{WIKIPEDIA_URL}?{urlencode(params)}")
    if response.status != 200:
        raise FetchError("wikipedia", f"HTTP {response.status}")
    try:
        body = response.json()
        hits = body["query"]["search"]
    except Exception as exc:
        raise FetchError("wikipedia", f"unexpected response shape: {exc}")
    return [
        (_squash(h.get("title", "")), _squash(_TAGS.sub("", h.get("snippet", ""))))
        for h in hits[:top_k]
    ]


def fetch_reference(source: str, query: str, http: HttpClient, top_k: int = 3) -> str:
    """Top-k titles plus abstracts/summaries as one observation string."""
    if source not in ("arxiv", "wikipedia"):
        raise FetchError(source, "unknown reference source; use arxiv or wikipedia")
    if not query or not query.strip():
        raise FetchError(source, "query must not be empty")
    try:
        if source == "arxiv":
            results = _arxiv(query.strip(), http, top_k)
        else:
            results = _wikipedia(query.strip(), http, top_k)
    except FetchError:
        raise
    except Exception as exc:  # transport and parsing failures shape alike
        raise FetchError(source, f"{type(exc).__name__}: {exc}")
    if not results:
        return f"No {source} results for the query."
    lines = [f"{k}. {title}: {summary}" for k, (title, summary) in enumerate(results, 1)]
    return "\n".join(lines)
