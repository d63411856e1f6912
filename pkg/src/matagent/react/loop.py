"""The reason-act-observe loop for a single agent."""

from __future__ import annotations

import json
import logging
import time
from typing import Protocol, Sequence

from ..tooling import Clock, DispatchContext, DispatchResult, EventSink, NullSink, ToolDispatcher
from .parsing import ParseError, corrective_observation, parse_react_output
from .prompting import Prompt, render_prompt
from .types import (
    AgentSpec,
    Answered,
    BackendError,
    FinalAnswer,
    LanguageDelegate,
    ReActStep,
    ReActTrace,
    StepBudgetExhausted,
    ToolCall,
    action_to_dict,
)

logger = logging.getLogger(__name__)

# The model must never hallucinate tool output: completions stop before any
# self-written observation.
STOP_SEQUENCES = ("\nObservation:", "Observation:")


class LlmBackend(Protocol):
    def complete(
        self, prompt: Prompt, *, agent: str, session: str, stop: Sequence[str] = ()
    ) -> str: ...


def _delegate_payload_text(payload) -> str:
    if isinstance(payload, str):
        return payload
    return json.dumps(payload, ensure_ascii=False)


def is_error_observation(text: str | None) -> bool:
    return bool(text) and text.startswith("Error on ")


def run_react_loop(
    spec: AgentSpec,
    input_text: str,
    dispatcher: ToolDispatcher,
    backend: LlmBackend,
    emitter: EventSink | None = None,
    *,
    session: str = "default",
    clock: Clock | None = None,
    workspace=None,
) -> ReActTrace:
    """Run one agent to completion, forwarding every step to the event sink.

    A parse failure consumes a step and injects a corrective observation; the
    loop ends with Answered, StepBudgetExhausted, or BackendError (keeping the
    partial trace).
    """
    emit = (emitter or NullSink()).emit
    tick: Clock = clock if clock is not None else time.time
    ctx = DispatchContext(session=session, emitter=emitter or NullSink(), clock=tick, workspace=workspace)

    schemas = []
    for name in spec.tool_names:
        schema = dispatcher.schema(name)
        if schema is not None:
            schemas.append(schema)

    steps: list[ReActStep] = []
    children: list[ReActTrace] = []
    outcome = None

    for index in range(spec.max_steps):
        prompt = render_prompt(spec, schemas, steps, input_text)
        started = tick()
        try:
            completion = backend.complete(
                prompt, agent=spec.name, session=session, stop=STOP_SEQUENCES
            )
        except Exception as exc:
            logger.warning("backend failure for %s: %s", spec.name, exc)
            outcome = BackendError(detail=f"{type(exc).__name__}: {exc}")
            break

        try:
            parsed = parse_react_output(completion)
        except ParseError as exc:
            observation = corrective_observation(exc)
            step = ReActStep(
                index=index,
                thought=None,
                action=None,
                observation=observation,
                parse_error=exc.message,
                started_at=started,
                ended_at=tick(),
            )
            steps.append(step)
            emit("observation", spec.name, {"step": index, "text": observation, "error": True})
            continue

        thought, action = parsed.thought, parsed.action
        if thought:
            emit("thought", spec.name, {"step": index, "text": thought})

        if isinstance(action, FinalAnswer):
            step = ReActStep(
                index=index,
                thought=thought,
                action=action,
                observation=None,
                started_at=started,
                ended_at=tick(),
            )
            steps.append(step)
            emit("action", spec.name, {"step": index, **action_to_dict(action)})
            outcome = Answered(text=action.text)
            break

        assert isinstance(action, ToolCall)
        if dispatcher.is_agent(action.tool):
            action = LanguageDelegate(
                agent=action.tool,
                input=_delegate_payload_text(action.input),
                raw_text=action.raw_text,
            )
        emit("action", spec.name, {"step": index, **action_to_dict(action)})

        name = action.agent if isinstance(action, LanguageDelegate) else action.tool
        payload = action.input
        try:
            result = dispatcher.dispatch(name, payload, ctx)
        except Exception as exc:  # tool bugs must not kill the loop
            logger.exception("dispatch of %s failed", name)
            result = DispatchResult(observation=f"Error on {name}: internal tool failure: {exc}")

        if result.child_trace is not None:
            children.append(result.child_trace)

        observation = result.observation
        step = ReActStep(
            index=index,
            thought=thought,
            action=action,
            observation=observation,
            started_at=started,
            ended_at=tick(),
        )
        steps.append(step)
        emit(
            "observation",
            spec.name,
            {"step": index, "text": observation, "error": is_error_observation(observation)},
        )

    if outcome is None:
        outcome = StepBudgetExhausted()

    return ReActTrace(
        agent=spec.name,
        input=input_text,
        steps=tuple(steps),
        child_traces=tuple(children),
        outcome=outcome,
    )
