"""Chat-completion backends: live HTTP plus deterministic record/replay."""

from .backends import (
    AuthError,
    BackendConfig,
    FixtureEntry,
    FixtureExhausted,
    LiveBackend,
    LlmError,
    RecordingBackend,
    ReplayBackend,
    TranscriptFixture,
    TransportError,
    build_backend,
    prompt_digest,
    record,
    truncate_at_stop,
)

__all__ = [
    "AuthError",
    "BackendConfig",
    "FixtureEntry",
    "FixtureExhausted",
    "LiveBackend",
    "LlmError",
    "RecordingBackend",
    "ReplayBackend",
    "TranscriptFixture",
    "TransportError",
    "build_backend",
    "prompt_digest",
    "record",
    "truncate_at_stop",
]
