"""Agent descriptions and the thought/action/observation trace model."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Union

ROLES = ("supervisor", "assistant")

DEFAULT_MAX_STEPS = {"supervisor": 15, "assistant": 10}


@dataclass(frozen=True)
class AgentSpec:
    name: str
    role: str
    system_preamble: str = ""
    tool_names: tuple[str, ...] = ()
    max_steps: int = 0
    backend_ref: str = "default"

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        if self.max_steps == 0:
            object.__setattr__(self, "max_steps", DEFAULT_MAX_STEPS[self.role])
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(frozen=True)
class ToolCall:
    tool: str
    input: Any
    raw_text: str = field(default="", compare=False)


@dataclass(frozen=True)
class LanguageDelegate:
    agent: str
    input: str
    raw_text: str = field(default="", compare=False)


@dataclass(frozen=True)
class FinalAnswer:
    text: str
    raw_text: str = field(default="", compare=False)


AgentAction = Union[ToolCall, LanguageDelegate, FinalAnswer]


@dataclass(frozen=True)
class ReActStep:
    index: int
    thought: Optional[str]
    action: Optional[AgentAction]  # None only when the completion failed to parse
    observation: Optional[str]
    parse_error: Optional[str] = None
    started_at: float = 0.0
    ended_at: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.action, FinalAnswer) and self.observation is not None:
            raise ValueError("a final-answer step carries no observation")
        if self.action is None and self.parse_error is None:
            raise ValueError("a step without an action must record its parse error")


@dataclass(frozen=True)
class Answered:
    text: str


@dataclass(frozen=True)
class StepBudgetExhausted:
    pass


@dataclass(frozen=True)
class BackendError:
    detail: str


Outcome = Union[Answered, StepBudgetExhausted, BackendError]


@dataclass(frozen=True)
class ReActTrace:
    agent: str
    input: str
    steps: tuple[ReActStep, ...]
    child_traces: tuple["ReActTrace", ...]
    outcome: Outcome

    def __post_init__(self) -> None:
        for k, step in enumerate(self.steps):
            if step.index != k:
                raise ValueError(f"step indices must be consecutive from 0, got {step.index} at {k}")
        delegate_count = sum(1 for s in self.steps if isinstance(s.action, LanguageDelegate))
        if delegate_count != len(self.child_traces):
            raise ValueError(
                f"{delegate_count} delegation steps but {len(self.child_traces)} child traces"
            )
        ends_final = bool(self.steps) and isinstance(self.steps[-1].action, FinalAnswer)
        if isinstance(self.outcome, Answered) != ends_final:
            raise ValueError("a trace is answered exactly when it ends with a final-answer step")

    @property
    def answer(self) -> Optional[str]:
        return self.outcome.text if isinstance(self.outcome, Answered) else None


# --- JSON serialization (documented shape, stable key order) ---------------


def action_to_dict(action: Optional[AgentAction]) -> Optional[dict]:
    if action is None:
        return None
    if isinstance(action, ToolCall):
        return {"kind": "tool_call", "tool": action.tool, "input": action.input}
    if isinstance(action, LanguageDelegate):
        return {"kind": "delegate", "agent": action.agent, "input": action.input}
    return {"kind": "final_answer", "text": action.text}


def action_from_dict(data: Optional[dict]) -> Optional[AgentAction]:
    if data is None:
        return None
    kind = data["kind"]
    if kind == "tool_call":
        return ToolCall(tool=data["tool"], input=data["input"])
    if kind == "delegate":
        return LanguageDelegate(agent=data["agent"], input=data["input"])
    if kind == "final_answer":
        return FinalAnswer(text=data["text"])
    raise ValueError(f"unknown action kind {kind!r}")


def outcome_to_dict(outcome: Outcome) -> dict:
    if isinstance(outcome, Answered):
        return {"kind": "answered", "text": outcome.text}
    if isinstance(outcome, StepBudgetExhausted):
        return {"kind": "step_budget_exhausted"}
    return {"kind": "backend_error", "detail": outcome.detail}


def outcome_from_dict(data: dict) -> Outcome:
    kind = data["kind"]
    if kind == "answered":
        return Answered(text=data["text"])
    if kind == "step_budget_exhausted":
        return StepBudgetExhausted()
    if kind == "backend_error":
        return BackendError(detail=data["detail"])
    raise ValueError(f"unknown outcome kind {kind!r}")


def trace_to_dict(trace: ReActTrace) -> dict:
    return {
        "agent": trace.agent,
        "input": trace.input,
        "outcome": outcome_to_dict(trace.outcome),
        "steps": [
            {
                "index": s.index,
                "thought": s.thought,
                "action": action_to_dict(s.action),
                "observation": s.observation,
                "parse_error": s.parse_error,
                "started_at": s.started_at,
                "ended_at": s.ended_at,
            }
            for s in trace.steps
        ],
        "child_traces": [trace_to_dict(c) for c in trace.child_traces],
    }


def trace_from_dict(data: dict) -> ReActTrace:
    return ReActTrace(
        agent=data["agent"],
        input=data["input"],
        outcome=outcome_from_dict(data["outcome"]),
        steps=tuple(
            ReActStep(
                index=s["index"],
                thought=s["thought"],
                action=action_from_dict(s["action"]),
                observation=s["observation"],
                parse_error=s.get("parse_error"),
                started_at=s.get("started_at", 0.0),
                ended_at=s.get("ended_at", 0.0),
            )
            for s in data["steps"]
        ),
        child_traces=tuple(trace_from_dict(c) for c in data["child_traces"]),
    )


def trace_to_json(trace: ReActTrace) -> str:
    return json.dumps(trace_to_dict(trace), sort_keys=True, ensure_ascii=False)
