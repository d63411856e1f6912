"""Hierarchical reason-act-observe agents: parsing, prompting, loop, composition."""

from .hierarchy import (
    BackendResolver,
    CycleError,
    HierarchyDispatcher,
    compose_hierarchy,
    run_supervisor,
)
from .loop import STOP_SEQUENCES, LlmBackend, is_error_observation, run_react_loop
from .parsing import (
    FINAL_ANSWER_ACTION,
    MalformedBlob,
    MultipleActions,
    NoAction,
    ParsedCompletion,
    ParseError,
    corrective_observation,
    parse_react_output,
    render_action,
)
from .prompting import (
    Prompt,
    UnknownTool,
    describe_tool,
    format_template,
    render_prompt,
    render_scratchpad,
    supervisor_solicitation,
)
from .types import (
    AgentAction,
    AgentSpec,
    Answered,
    BackendError,
    FinalAnswer,
    LanguageDelegate,
    Outcome,
    ReActStep,
    ReActTrace,
    StepBudgetExhausted,
    ToolCall,
    action_from_dict,
    action_to_dict,
    trace_from_dict,
    trace_to_dict,
    trace_to_json,
)

__all__ = [
    "AgentAction",
    "AgentSpec",
    "Answered",
    "BackendError",
    "BackendResolver",
    "CycleError",
    "FINAL_ANSWER_ACTION",
    "FinalAnswer",
    "HierarchyDispatcher",
    "LanguageDelegate",
    "LlmBackend",
    "MalformedBlob",
    "MultipleActions",
    "NoAction",
    "Outcome",
    "ParseError",
    "ParsedCompletion",
    "Prompt",
    "ReActStep",
    "ReActTrace",
    "STOP_SEQUENCES",
    "StepBudgetExhausted",
    "ToolCall",
    "UnknownTool",
    "action_from_dict",
    "action_to_dict",
    "compose_hierarchy",
    "corrective_observation",
    "describe_tool",
    "format_template",
    "is_error_observation",
    "parse_react_output",
    "render_action",
    "render_prompt",
    "render_scratchpad",
    "run_react_loop",
    "run_supervisor",
    "supervisor_solicitation",
    "trace_from_dict",
    "trace_to_dict",
    "trace_to_json",
]
