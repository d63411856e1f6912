"""Service configuration: file loading and runtime wiring."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..llm import BackendConfig, build_backend
from ..mptools import (
    DEFAULT_BASE_URL,
    DEFAULT_BYTE_BUDGET,
    MP_API_KEY_ENV,
    FixtureHttpClient,
    LiveHttpClient,
    MpClient,
    MpToolDispatcher,
    ProcessToolSpec,
    TokenBucket,
)
from ..roster import Roster, build_roster


@dataclass
class ServiceConfig:
    backend: BackendConfig
    workspace_root: str
    mp_base_url: str = DEFAULT_BASE_URL
    mp_api_key_env: str = MP_API_KEY_ENV
    mp_http_fixture: str = ""
    reference_http_fixture: str = ""
    include_references: bool = True
    rate_limit_per_s: float = 10.0
    observation_byte_budget: int = DEFAULT_BYTE_BUDGET
    supervisor_max_steps: int = 15
    assistant_max_steps: int = 10
    process_tools: list[ProcessToolSpec] = field(default_factory=list)
    static_dir: str = ""


def _parse_config_text(text: str, suffix: str) -> dict:
    if suffix in (".toml", ".tml"):
        try:
            import tomllib
        except ModuleNotFoundError as exc:
            raise RuntimeError(
                "TOML config files need Python >= 3.11; use JSON on this interpreter"
            ) from exc
        return tomllib.loads(text)
    return json.loads(text)


def load_config(path: str | Path) -> ServiceConfig:
    """Read a JSON (or, on 3.11+, TOML) service configuration file."""
    path = Path(path)
    raw = _parse_config_text(path.read_text(), path.suffix.lower())

    backend_raw = dict(raw.get("backend", {}))
    backend = BackendConfig(
        kind=backend_raw.get("kind", "replay"),
        base_url=backend_raw.get("base_url", ""),
        model=backend_raw.get("model", ""),
        temperature=float(backend_raw.get("temperature", 0.0)),
        api_key_env=backend_raw.get("api_key_env", "LLM_API_KEY"),
        fixture_path=backend_raw.get("fixture_path", ""),
    )
    tools = [
        ProcessToolSpec(
            name=t["name"],
            command_template=t["command_template"],
            workdir=t.get("workdir", "."),
            timeout_s=float(t.get("timeout_s", 60.0)),
            enabled=bool(t.get("enabled", False)),
            artifact_globs=tuple(t.get("artifact_globs", [])),
            description=t.get("description", "external process tool"),
        )
        for t in raw.get("process_tools", [])
    ]
    return ServiceConfig(
        backend=backend,
        workspace_root=raw.get("workspace_root", "./workspaces"),
        mp_base_url=raw.get("mp_base_url", DEFAULT_BASE_URL),
        mp_api_key_env=raw.get("mp_api_key_env", MP_API_KEY_ENV),
        mp_http_fixture=raw.get("mp_http_fixture", ""),
        reference_http_fixture=raw.get("reference_http_fixture", ""),
        include_references=bool(raw.get("include_references", True)),
        rate_limit_per_s=float(raw.get("rate_limit_per_s", 10.0)),
        observation_byte_budget=int(raw.get("observation_byte_budget", DEFAULT_BYTE_BUDGET)),
        supervisor_max_steps=int(raw.get("supervisor_max_steps", 15)),
        assistant_max_steps=int(raw.get("assistant_max_steps", 10)),
        process_tools=tools,
        static_dir=raw.get("static_dir", ""),
    )


@dataclass
class Runtime:
    """Everything a session needs to run the supervisor hierarchy."""

    config: ServiceConfig
    roster: Roster
    dispatcher: MpToolDispatcher
    backends: dict

    @property
    def deterministic(self) -> bool:
        return self.config.backend.kind == "replay"

    def fresh_backend(self):
        # Replay cursors are per (session, agent) inside one backend instance,
        # so a single shared backend serves concurrent sessions.
        return self.backends["default"]


def build_runtime(config: ServiceConfig) -> Runtime:
    if config.mp_http_fixture:
        mp_http = FixtureHttpClient(config.mp_http_fixture)
    else:
        mp_http = LiveHttpClient(limiter=TokenBucket(config.rate_limit_per_s))

    mp_client = MpClient(
        mp_http,
        base_url=config.mp_base_url,
        api_key=os.environ.get(config.mp_api_key_env, ""),
    )

    reference_http = None
    if config.include_references:
        if config.reference_http_fixture:
            reference_http = FixtureHttpClient(config.reference_http_fixture)
        else:
            reference_http = LiveHttpClient()

    dispatcher = MpToolDispatcher(
        client=mp_client,
        reference_http=reference_http,
        process_tools={t.name: t for t in config.process_tools},
        byte_budget=config.observation_byte_budget,
    )

    roster = build_roster(
        supervisor_max_steps=config.supervisor_max_steps,
        assistant_max_steps=config.assistant_max_steps,
        include_references=config.include_references,
        process_tool_names=tuple(t.name for t in config.process_tools),
    )

    backends = {"default": build_backend(config.backend)}
    return Runtime(config=config, roster=roster, dispatcher=dispatcher, backends=backends)
