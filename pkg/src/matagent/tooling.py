"""Shared tool-facing contracts: schemas, dispatch interfaces, and event sinks.

Both the agent runtime and the concrete toolkits depend on this module, so it
must stay free of imports from either side.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Protocol, runtime_checkable

ParamKind = str  # one of: string, number, integer, boolean, comma-list

PARAM_KINDS = ("string", "number", "integer", "boolean", "comma-list")


@dataclass(frozen=True)
class ToolParam:
    name: str
    kind: ParamKind
    required: bool = False
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind not in PARAM_KINDS:
            raise ValueError(f"unknown param kind {self.kind!r} for {self.name!r}")


@dataclass(frozen=True)
class ToolSchema:
    """Declarative description of one callable tool."""

    name: str
    description: str
    params: tuple[ToolParam, ...] = ()
    endpoint_path: str = ""
    guard_rules: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = [p.name for p in self.params]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate param names in tool {self.name!r}")

    def param(self, name: str) -> ToolParam | None:
        for p in self.params:
            if p.name == name:
                return p
        return None


class ToolError(Exception):
    """A tool failure shaped for the agent loop.

    ``observation`` is the text handed back to the model so it can
    self-correct; every subclass keeps the "Error on <tool>:" prefix.
    """

    def __init__(self, observation: str):
        super().__init__(observation)
        self.observation = observation


Clock = Callable[[], float]


class LogicalClock:
    """Deterministic monotone clock used for replay runs."""

    def __init__(self, start: float = 0.0, step: float = 1.0):
        self._next = start
        self._step = step

    def __call__(self) -> float:
        value = self._next
        self._next += self._step
        return value


@runtime_checkable
class EventSink(Protocol):
    """Receives runtime events as they happen; must tolerate concurrent loops."""

    def emit(self, kind: str, agent: str, payload: dict[str, Any]) -> None: ...


class NullSink:
    def emit(self, kind: str, agent: str, payload: dict[str, Any]) -> None:
        pass


class ListSink:
    """Collects events in memory; handy for tests and trace reconstruction."""

    def __init__(self) -> None:
        self.events: list[dict[str, Any]] = []

    def emit(self, kind: str, agent: str, payload: dict[str, Any]) -> None:
        self.events.append({"kind": kind, "agent": agent, "payload": payload})


@dataclass
class DispatchContext:
    """Per-run state a dispatcher may need while executing a tool."""

    session: str = "default"
    emitter: EventSink = field(default_factory=NullSink)
    clock: Clock = time.time
    workspace: Path | None = None


@dataclass
class DispatchResult:
    observation: str
    child_trace: Any | None = None  # ReActTrace for delegations, else None


@runtime_checkable
class ToolDispatcher(Protocol):
    def schema(self, name: str) -> ToolSchema | None: ...

    def is_agent(self, name: str) -> bool: ...

    def dispatch(self, name: str, payload: Any, ctx: DispatchContext) -> DispatchResult: ...


def unknown_tool_observation(name: str, known: list[str]) -> str:
    roster = ", ".join(sorted(known)) if known else "(none)"
    return f"Error on {name}: unknown tool. The only valid tools are: {roster}."
