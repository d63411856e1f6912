"""Parse model completions into agent actions.

A completion may carry an optional ``Thought:`` span and then either a
``Final Answer:`` span or exactly one fenced JSON blob with ``action`` and
``action_input`` keys. Fences with or without a language tag are accepted
and surrounding prose is ignored; strictness applies only to the blob's
internal shape. When both a blob and a ``Final Answer:`` span appear, the
earlier one wins.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .types import AgentAction, FinalAnswer, ToolCall

FINAL_ANSWER_ACTION = "Final Answer"

_FENCE = re.compile(r"```[ \t]*([A-Za-z0-9_+-]*)[ \t]*\r?\n(.*?)```", re.DOTALL)
_THOUGHT = re.compile(r"Thought:[ \t]*", re.IGNORECASE)
_FINAL = re.compile(r"Final Answer\s*:[ \t]*", re.IGNORECASE)
_ACTION_LABEL = re.compile(r"Action\s*:?\s*$", re.IGNORECASE)


class ParseError(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class NoAction(ParseError):
    pass


class MalformedBlob(ParseError):
    pass


class MultipleActions(ParseError):
    pass


@dataclass(frozen=True)
class ParsedCompletion:
    thought: Optional[str]
    action: AgentAction


def _looks_like_action_list(value) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(x, dict) and "action" in x for x in value)
    )


@dataclass
class _Candidate:
    position: int  # fence start
    payload: object | None
    labeled: bool
    error: str | None = None
    span_start: int = 0  # start of the "Action:" label when present, else fence start


def _collect_candidates(text: str) -> list[_Candidate]:
    candidates = []
    for m in _FENCE.finditer(text):
        body = m.group(2).strip()
        head = text[: m.start()].rstrip()
        label = _ACTION_LABEL.search(head[-24:] or "")
        labeled = bool(label)
        span_start = (len(head) - 24 if len(head) > 24 else 0) + label.start() if label else m.start()
        try:
            payload = json.loads(body)
        except json.JSONDecodeError as exc:
            if labeled:
                candidates.append(_Candidate(m.start(), None, True, f"invalid JSON: {exc.msg}", span_start))
            continue
        if isinstance(payload, dict) and "action" in payload:
            candidates.append(_Candidate(m.start(), payload, labeled, None, span_start))
        elif isinstance(payload, list) and _looks_like_action_list(payload):
            candidates.append(
                _Candidate(m.start(), payload, labeled, "a list of actions is not a single action", span_start)
            )
        elif labeled:
            candidates.append(
                _Candidate(m.start(), payload, True, "blob must be an object with `action` and `action_input` keys", span_start)
            )
    return candidates


def _action_from_blob(payload: dict, raw_text: str) -> AgentAction:
    action_name = payload.get("action")
    if not isinstance(action_name, str) or not action_name.strip():
        raise MalformedBlob("`action` must be a non-empty string")
    if "action_input" not in payload:
        raise MalformedBlob("blob is missing the `action_input` key")
    action_input = payload["action_input"]
    if _looks_like_action_list(action_input):
        raise MultipleActions("`action_input` contains a list of actions; supply a single action")
    if action_name.strip() == FINAL_ANSWER_ACTION:
        text = action_input if isinstance(action_input, str) else json.dumps(action_input)
        return FinalAnswer(text=text, raw_text=raw_text)
    return ToolCall(tool=action_name.strip(), input=action_input, raw_text=raw_text)


def _extract_thought(text: str, stop_at: int) -> Optional[str]:
    m = _THOUGHT.search(text)
    if not m:
        return None
    if stop_at != -1 and m.start() >= stop_at:
        return None
    end_markers = []
    fence = text.find("```", m.end())
    if fence != -1:
        end_markers.append(fence)
    for pattern in (re.compile(r"Action\s*:", re.IGNORECASE), _FINAL):
        mm = pattern.search(text, m.end())
        if mm:
            end_markers.append(mm.start())
    end = min(end_markers) if end_markers else len(text)
    thought = text[m.end() : end].strip()
    return thought or None


def parse_react_output(text: str) -> ParsedCompletion:
    """Parse one completion into (optional thought, action).

    Raises NoAction, MalformedBlob, or MultipleActions.
    """
    candidates = _collect_candidates(text)
    final_match = _FINAL.search(text)

    if len(candidates) > 1:
        raise MultipleActions(
            f"found {len(candidates)} action blobs; respond with a single action"
        )

    blob = candidates[0] if candidates else None

    chosen: AgentAction | None = None
    if blob is not None and final_match is not None:
        # Earlier span wins.
        if blob.position <= final_match.start():
            final_match = None
        else:
            blob = None

    if final_match is not None:
        answer_end = len(text)
        for c in candidates:
            if c.span_start > final_match.end():
                answer_end = min(answer_end, c.span_start)
        chosen = FinalAnswer(text=text[final_match.end() : answer_end].strip(), raw_text=text)
    elif blob is not None:
        if blob.error is not None:
            if _looks_like_action_list(blob.payload):
                raise MultipleActions(blob.error)
            raise MalformedBlob(blob.error)
        chosen = _action_from_blob(blob.payload, raw_text=text)

    if chosen is None:
        raise NoAction("completion contains neither an action blob nor a Final Answer")

    marker = final_match.start() if final_match is not None else (blob.position if blob else -1)
    thought = _extract_thought(text, marker)
    return ParsedCompletion(thought=thought, action=chosen)


def render_action(action: AgentAction) -> str:
    """Canonical text for an action; parsing it back reconstructs the action."""
    if isinstance(action, FinalAnswer):
        return f"Final Answer: {action.text}"
    if isinstance(action, ToolCall):
        blob = {"action": action.tool, "action_input": action.input}
    else:
        blob = {"action": action.agent, "action_input": action.input}
    return "Action:\n```json\n" + json.dumps(blob, ensure_ascii=False, indent=2) + "\n```"


def corrective_observation(error: ParseError) -> str:
    """Observation injected when a completion cannot be parsed."""
    return (
        f"Invalid response format: {error.message}. Respond with a single fenced JSON blob "
        'with an `action` key and an `action_input` key, or a line starting with "Final Answer:".'
    )
