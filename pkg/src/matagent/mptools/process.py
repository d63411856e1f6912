"""External-process tools: templated commands with timeouts and artifacts.

These cover workflow launchers (molecular-dynamics runs, script execution)
whose real execution environments live outside this package; the contract
here is argument binding, the timeout/exit discipline, and artifact
collection. Arbitrary-script tools ship disabled and must be enabled
explicitly in configuration.
"""

from __future__ import annotations

import shlex
import string
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import NonZeroExit, PolicyError, ProcessTimeout, ValidationError

TAIL_CHARS = 4096


@dataclass(frozen=True)
class ProcessToolSpec:
    name: str
    command_template: str
    workdir: str
    timeout_s: float = 60.0
    enabled: bool = False
    artifact_globs: tuple[str, ...] = ()
    description: str = "external process tool"


@dataclass(frozen=True)
class ProcessResult:
    stdout_tail: str
    artifacts: tuple[str, ...]
    exit_code: int


def _tail(text: str | None) -> str:
    if not text:
        return ""
    return text[-TAIL_CHARS:].strip()


def _placeholders(template: str) -> set[str]:
    names = set()
    for _, name, _, _ in string.Formatter().parse(template):
        if name:
            names.add(name)
    return names


def render_command(spec: ProcessToolSpec, input_value: Mapping[str, Any]) -> list[str]:
    """Bind template placeholders; each bound value stays a single argv token."""
    needed = _placeholders(spec.command_template)
    missing = sorted(needed - set(input_value))
    if missing:
        raise ValidationError(
            spec.name, f"missing placeholder value(s): {', '.join(missing)}"
        )
    argv = []
    for token in shlex.split(spec.command_template):
        argv.append(token.format(**{k: str(v) for k, v in input_value.items()}))
    return argv


def run_process_tool(spec: ProcessToolSpec, input_value: Any) -> ProcessResult:
    """Run the tool's command in its workdir, enforcing the timeout.

    Raises PolicyError when the tool is disabled, ProcessTimeout when the
    deadline passes (partial stdout preserved), and NonZeroExit on failure
    (stdout+stderr tails preserved for self-correction).
    """
    if not spec.enabled:
        raise PolicyError(spec.name)
    if input_value is None:
        input_value = {}
    if not isinstance(input_value, Mapping):
        raise ValidationError(
            spec.name, f"input must be an object of placeholder values, got {type(input_value).__name__}"
        )

    argv = render_command(spec, input_value)
    workdir = Path(spec.workdir)
    try:
        proc = subprocess.run(
            argv,
            cwd=workdir,
            capture_output=True,
            text=True,
            timeout=spec.timeout_s,
        )
    except subprocess.TimeoutExpired as exc:
        stdout = exc.stdout.decode() if isinstance(exc.stdout, bytes) else (exc.stdout or "")
        raise ProcessTimeout(spec.name, spec.timeout_s, _tail(stdout))
    except FileNotFoundError as exc:
        raise ValidationError(spec.name, f"command not found: {exc.filename}")

    if proc.returncode != 0:
        raise NonZeroExit(spec.name, proc.returncode, _tail(proc.stdout), _tail(proc.stderr))

    artifacts = []
    for pattern in spec.artifact_globs:
        for path in sorted(workdir.glob(pattern)):
            artifacts.append(str(path))
    return ProcessResult(
        stdout_tail=_tail(proc.stdout),
        artifacts=tuple(artifacts),
        exit_code=proc.returncode,
    )
