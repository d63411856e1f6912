"""Prompt assembly from the packaged template assets.

The format template and the supervisor solicitation live as text assets and
are substituted, never edited, so the on-the-wire prompt stays stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..tooling import ToolSchema
from .parsing import render_action
from .types import AgentSpec, ReActStep


class UnknownTool(KeyError):
    pass


@dataclass(frozen=True)
class Prompt:
    """System/user split of one completion request."""

    system: str
    user: str

    @property
    def text(self) -> str:
        return f"{self.system}\n\n{self.user}"


@lru_cache(maxsize=None)
def _asset(name: str) -> str:
    return resources.files("matagent.react").joinpath("templates", name).read_text()


def format_template() -> str:
    return _asset("react_format.txt")


def supervisor_solicitation() -> str:
    return _asset("supervisor_preamble.txt")


def describe_tool(schema: ToolSchema) -> str:
    """One {tools} line: name, description, and the argument signature."""
    if not schema.params:
        return f"{schema.name}: {schema.description}"
    args = ", ".join(
        f"{p.name} ({p.kind}{', required' if p.required else ''})" for p in schema.params
    )
    return f"{schema.name}: {schema.description} Arguments: {args}"


def render_scratchpad(history: Sequence[ReActStep]) -> str:
    """Serialize prior steps as alternating Thought/Action/Observation blocks."""
    blocks: list[str] = []
    for step in history:
        if step.thought:
            blocks.append(f"Thought: {step.thought}")
        if step.action is not None:
            blocks.append(render_action(step.action))
        if step.observation is not None:
            blocks.append(f"Observation: {step.observation}")
    return "\n".join(blocks)


def render_prompt(
    spec: AgentSpec,
    tools: Sequence[ToolSchema],
    history: Sequence[ReActStep],
    input_text: str,
) -> Prompt:
    """Build the full prompt for the next completion of one agent loop."""
    by_name = {t.name: t for t in tools}
    missing = [name for name in spec.tool_names if name not in by_name]
    if missing:
        raise UnknownTool(f"no schema for tool(s): {', '.join(missing)}")

    ordered = [by_name[name] for name in spec.tool_names]
    body = format_template().format(
        tools="\n".join(describe_tool(t) for t in ordered),
        tool_names=", ".join(spec.tool_names),
    )

    parts = []
    if spec.role == "supervisor":
        parts.append(supervisor_solicitation().rstrip("\n"))
    if spec.system_preamble:
        parts.append(spec.system_preamble.rstrip("\n"))
    parts.append(body.rstrip("\n"))
    system = "\n\n".join(parts)

    user = f"Question: {input_text}"
    scratchpad = render_scratchpad(history)
    if scratchpad:
        user = f"{user}\n{scratchpad}"
    return Prompt(system=system, user=user)
