from __future__ import annotations

import pytest

from matagent.react import (
    AgentSpec,
    FinalAnswer,
    ReActStep,
    ToolCall,
    UnknownTool,
    format_template,
    render_prompt,
    supervisor_solicitation,
)

from .react_stubs import simple_schema


def make_spec(role: str, tools=()) -> AgentSpec:
    return AgentSpec(name=f"{role}-x", role=role, tool_names=tuple(tools))


class TestTemplateAssets:
    def test_format_template_markers(self):
        t = format_template()
        assert "{tools}" in t
        assert "{tool_names}" in t
        assert "ALWAYS use the following format:" in t
        assert "do NOT return a list of multiple actions" in t
        assert t.rstrip().endswith("Reminder to always use the exact characters `Final Answer` when responding.")

    def test_solicitation_opening(self):
        assert supervisor_solicitation().startswith("You name is LLaMP and you are a helpful agent")


class TestRenderPrompt:
    def test_supervisor_prefix(self):
        spec = make_spec("supervisor", ["helper"])
        prompt = render_prompt(spec, [simple_schema("helper")], [], "hello")
        assert prompt.system.startswith("You name is LLaMP and you are a helpful agent")
        assert prompt.text.startswith("You name is LLaMP")

    def test_assistant_tool_list(self):
        spec = make_spec("assistant", ["alpha", "beta"])
        prompt = render_prompt(
            spec, [simple_schema("alpha"), simple_schema("beta")], [], "hello"
        )
        assert 'The only values that should be in the "action" field are: alpha, beta' in prompt.system
        assert not prompt.system.startswith("You name is LLaMP")

    def test_empty_toolset_is_legal(self):
        spec = make_spec("assistant")
        prompt = render_prompt(spec, [], [], "hello")
        assert 'in the "action" field are: ' in prompt.system
        assert "Question: hello" in prompt.user

    def test_unknown_tool(self):
        spec = make_spec("assistant", ["ghost"])
        with pytest.raises(UnknownTool):
            render_prompt(spec, [], [], "hello")

    def test_history_blocks(self):
        spec = make_spec("assistant", ["alpha"])
        steps = [
            ReActStep(
                index=0,
                thought="try alpha",
                action=ToolCall(tool="alpha", input={"q": "x"}),
                observation="result one",
            ),
        ]
        prompt = render_prompt(spec, [simple_schema("alpha")], steps, "the question")
        assert "Question: the question" in prompt.user
        assert "Thought: try alpha" in prompt.user
        assert '"action": "alpha"' in prompt.user
        assert "Observation: result one" in prompt.user
        assert prompt.user.index("Thought:") < prompt.user.index("Action:") < prompt.user.index("Observation:")

    def test_braces_render_literally(self):
        spec = make_spec("assistant", ["alpha"])
        prompt = render_prompt(spec, [simple_schema("alpha")], [], "q")
        assert '{\n  "action": $TOOL_NAME,\n  "action_input": $INPUT\n}' in prompt.system

    def test_final_answer_step_rendering(self):
        spec = make_spec("assistant", [])
        steps = [
            ReActStep(index=0, thought=None, action=FinalAnswer(text="42"), observation=None),
        ]
        prompt = render_prompt(spec, [], steps, "q")
        assert "Final Answer: 42" in prompt.user
