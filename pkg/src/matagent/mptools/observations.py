"""Render tool results into the compact observation strings the agent sees."""

from __future__ import annotations

from typing import Sequence

from ..tooling import ToolError
from .client import MPDocument

DEFAULT_BYTE_BUDGET = 4096

EMPTY_RESULT = "No documents matched the query."


def _truncate(text: str, byte_budget: int) -> str:
    encoded = text.encode("utf-8")
    if len(encoded) <= byte_budget:
        return text
    head = encoded[:byte_budget].decode("utf-8", errors="ignore")
    return (
        f"{head} ...[truncated {len(encoded)} bytes; narrow `fields` or lower `limit`]"
    )


def render_documents(docs: Sequence[MPDocument], byte_budget: int = DEFAULT_BYTE_BUDGET) -> str:
    """Single-line python-repr rendering of the document payloads."""
    if not docs:
        return EMPTY_RESULT
    return _truncate(repr([d.payload for d in docs]), byte_budget)


def render_observation(result, byte_budget: int = DEFAULT_BYTE_BUDGET) -> str:
    """Observation text for a tool outcome (documents, error, or plain text)."""
    if isinstance(result, ToolError):
        return result.observation
    if isinstance(result, str):
        return _truncate(result, byte_budget)
    return render_documents(list(result), byte_budget)
