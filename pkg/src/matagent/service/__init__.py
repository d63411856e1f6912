"""Streaming chat service over the agent hierarchy."""

from .app import create_app
from .config import Runtime, ServiceConfig, build_runtime, load_config
from .state import EventStream, Session, SessionStore

__all__ = [
    "EventStream",
    "Runtime",
    "ServiceConfig",
    "Session",
    "SessionStore",
    "build_runtime",
    "create_app",
    "load_config",
]
