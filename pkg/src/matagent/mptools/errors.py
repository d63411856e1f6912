"""Tool failure types; every observation begins "Error on <tool>:" so the
agent loop's self-correction machinery can treat them uniformly."""

from __future__ import annotations

from ..tooling import ToolError

REVISE_HINT = (
    "Please revise arguments or try smaller request by specifying 'limit' in request."
)


def shaped(tool: str, reason: str, hint: bool = False) -> str:
    text = f"Error on {tool}: {reason}"
    if hint:
        if not text.endswith("."):
            text += "."
        text += f" {REVISE_HINT}"
    return text


class ValidationError(ToolError):
    def __init__(self, tool: str, reason: str):
        super().__init__(shaped(tool, reason, hint=True))
        self.tool = tool
        self.reason = reason


class QueryError(ToolError):
    def __init__(self, tool: str, http_status: int, body_excerpt: str,
                 retry_after: float | None = None):
        reason = f"HTTP {http_status}: {body_excerpt}" if body_excerpt else f"HTTP {http_status}"
        if http_status in (401, 403):
            reason += " (check the MP API key)"
        if retry_after is not None:
            reason += f" (rate limited; retry after {retry_after:g}s)"
        super().__init__(shaped(tool, reason))
        self.tool = tool
        self.http_status = http_status
        self.body_excerpt = body_excerpt
        self.retry_after = retry_after


class PolicyError(ToolError):
    def __init__(self, tool: str, reason: str = "this tool is disabled by policy"):
        super().__init__(shaped(tool, reason))
        self.tool = tool


class ProcessTimeout(ToolError):
    def __init__(self, tool: str, timeout_s: float, stdout_tail: str):
        reason = f"timed out after {timeout_s:g}s and was killed"
        if stdout_tail:
            reason += f". Partial output: {stdout_tail}"
        super().__init__(shaped(tool, reason))
        self.tool = tool
        self.stdout_tail = stdout_tail


class NonZeroExit(ToolError):
    def __init__(self, tool: str, exit_code: int, stdout_tail: str, stderr_tail: str):
        reason = f"exited with status {exit_code}"
        if stderr_tail:
            reason += f". stderr: {stderr_tail}"
        if stdout_tail:
            reason += f". stdout: {stdout_tail}"
        super().__init__(shaped(tool, reason))
        self.tool = tool
        self.exit_code = exit_code
        self.stdout_tail = stdout_tail
        self.stderr_tail = stderr_tail


class FetchError(ToolError):
    def __init__(self, source: str, reason: str):
        super().__init__(shaped(source, reason))
        self.source = source
