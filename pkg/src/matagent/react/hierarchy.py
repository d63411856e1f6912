"""Compose a supervisor with assistant agents.

The supervisor's action space is its leaf tools plus the assistant names:
invoking an assistant runs that agent's whole loop on the delegated text and
returns its final answer (or a diagnostic) as the supervisor's observation.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Mapping, Sequence

from ..tooling import (
    DispatchContext,
    DispatchResult,
    ToolDispatcher,
    ToolParam,
    ToolSchema,
    unknown_tool_observation,
)
from .loop import LlmBackend, run_react_loop
from .types import AgentSpec, Answered, BackendError, ReActTrace

BackendResolver = Callable[[str], LlmBackend]


class CycleError(ValueError):
    pass


def _resolver(backends: Mapping[str, LlmBackend] | BackendResolver) -> BackendResolver:
    if callable(backends):
        return backends
    mapping = dict(backends)

    def resolve(ref: str) -> LlmBackend:
        if ref in mapping:
            return mapping[ref]
        if "default" in mapping:
            return mapping["default"]
        raise KeyError(f"no backend configured for ref {ref!r}")

    return resolve


def _delegate_schema(spec: AgentSpec, description: str | None = None) -> ToolSchema:
    return ToolSchema(
        name=spec.name,
        description=description
        or f"Assistant agent. Delegate a self-contained natural-language task to {spec.name}; "
        "provide complete context in the input.",
        params=(ToolParam(name="input", kind="string", required=True,
                          description="the full task for the assistant"),),
    )


class HierarchyDispatcher:
    """Dispatcher whose tool surface is assistant agents plus leaf tools."""

    def __init__(
        self,
        supervisor: AgentSpec,
        assistants: Sequence[AgentSpec],
        backends: Mapping[str, LlmBackend] | BackendResolver,
        tools: ToolDispatcher | None = None,
        assistant_descriptions: Mapping[str, str] | None = None,
    ):
        names = [a.name for a in assistants]
        if len(names) != len(set(names)):
            raise ValueError("assistant names must be unique")
        agent_names = set(names) | {supervisor.name}
        for a in assistants:
            referenced = agent_names.intersection(a.tool_names)
            if referenced:
                raise CycleError(
                    f"assistant {a.name!r} lists agent(s) as tools: {sorted(referenced)}"
                )
        self.supervisor = supervisor
        self.assistants = {a.name: a for a in assistants}
        self.tools = tools
        self.resolve_backend = _resolver(backends)
        self.descriptions = dict(assistant_descriptions or {})

    def known_names(self) -> list[str]:
        names = list(self.assistants)
        if self.tools is not None:
            for name in self.supervisor.tool_names:
                if name not in self.assistants and self.tools.schema(name) is not None:
                    names.append(name)
        return names

    def is_agent(self, name: str) -> bool:
        return name in self.assistants

    def schema(self, name: str) -> ToolSchema | None:
        if name in self.assistants:
            return _delegate_schema(self.assistants[name], self.descriptions.get(name))
        return self.tools.schema(name) if self.tools is not None else None

    def dispatch(self, name: str, payload: Any, ctx: DispatchContext) -> DispatchResult:
        if name in self.assistants:
            return self._delegate(self.assistants[name], payload, ctx)
        if self.tools is not None and self.tools.schema(name) is not None:
            return self.tools.dispatch(name, payload, ctx)
        return DispatchResult(observation=unknown_tool_observation(name, self.known_names()))

    def _delegate(self, spec: AgentSpec, payload: Any, ctx: DispatchContext) -> DispatchResult:
        if isinstance(payload, dict) and set(payload) == {"input"}:
            payload = payload["input"]
        input_text = payload if isinstance(payload, str) else json.dumps(payload)

        ctx.emitter.emit(
            "delegate_start",
            self.supervisor.name,
            {"assistant": spec.name, "input": input_text},
        )
        trace = run_react_loop(
            spec,
            input_text,
            dispatcher=self.tools if self.tools is not None else _EmptyDispatcher(),
            backend=self.resolve_backend(spec.backend_ref),
            emitter=ctx.emitter,
            session=ctx.session,
            clock=ctx.clock,
            workspace=ctx.workspace,
        )
        observation = _delegation_observation(spec, trace)
        ctx.emitter.emit(
            "delegate_end",
            self.supervisor.name,
            {
                "assistant": spec.name,
                "outcome": type(trace.outcome).__name__,
                "answer": trace.answer,
            },
        )
        return DispatchResult(observation=observation, child_trace=trace)


def _delegation_observation(spec: AgentSpec, trace: ReActTrace) -> str:
    if isinstance(trace.outcome, Answered):
        return trace.outcome.text
    last_thought = next(
        (s.thought for s in reversed(trace.steps) if s.thought), None
    )
    if isinstance(trace.outcome, BackendError):
        reason = f"backend failure: {trace.outcome.detail}"
    else:
        reason = (
            f"step budget exhausted after {len(trace.steps)} steps without a final answer"
        )
    suffix = f" Last thought: {last_thought}" if last_thought else ""
    return f"Error on {spec.name}: {reason}.{suffix}"


class _EmptyDispatcher:
    def schema(self, name: str) -> ToolSchema | None:
        return None

    def is_agent(self, name: str) -> bool:
        return False

    def dispatch(self, name: str, payload: Any, ctx: DispatchContext) -> DispatchResult:
        return DispatchResult(observation=unknown_tool_observation(name, []))


def compose_hierarchy(
    supervisor: AgentSpec,
    assistants: Sequence[AgentSpec],
    *,
    backends: Mapping[str, LlmBackend] | BackendResolver,
    tools: ToolDispatcher | None = None,
    assistant_descriptions: Mapping[str, str] | None = None,
) -> HierarchyDispatcher:
    """Build the supervisor-facing dispatcher over assistants and leaf tools."""
    return HierarchyDispatcher(
        supervisor, assistants, backends, tools, assistant_descriptions
    )


def run_supervisor(
    supervisor: AgentSpec,
    assistants: Sequence[AgentSpec],
    input_text: str,
    *,
    backends: Mapping[str, LlmBackend] | BackendResolver,
    tools: ToolDispatcher | None = None,
    emitter=None,
    session: str = "default",
    clock=None,
    workspace=None,
    assistant_descriptions: Mapping[str, str] | None = None,
) -> ReActTrace:
    """Convenience wrapper: compose the hierarchy and run the supervisor loop."""
    dispatcher = compose_hierarchy(
        supervisor,
        assistants,
        backends=backends,
        tools=tools,
        assistant_descriptions=assistant_descriptions,
    )
    return run_react_loop(
        supervisor,
        input_text,
        dispatcher=dispatcher,
        backend=_resolver(backends)(supervisor.backend_ref),
        emitter=emitter,
        session=session,
        clock=clock,
        workspace=workspace,
    )
