"""Materials Project tool schemas, validation, clients, and dispatch."""

from .client import DEFAULT_BASE_URL, MP_API_KEY_ENV, MPDocument, MpClient
from .dispatch import REFERENCE_SCHEMAS, STRUCTURE_TOOL, MpToolDispatcher
from .errors import (
    FetchError,
    NonZeroExit,
    PolicyError,
    ProcessTimeout,
    QueryError,
    ValidationError,
)
from .http import FixtureHttpClient, HttpResponse, LiveHttpClient, TokenBucket
from .observations import DEFAULT_BYTE_BUDGET, EMPTY_RESULT, render_documents, render_observation
from .process import ProcessResult, ProcessToolSpec, render_command, run_process_tool
from .references import fetch_reference
from .schemas import FIELDS_REQUIRED, LIMIT_SUGGESTED, MP_TOOLS, mp_tool
from .validation import MPQuery, query_params, validate_args

__all__ = [
    "DEFAULT_BASE_URL",
    "DEFAULT_BYTE_BUDGET",
    "EMPTY_RESULT",
    "FIELDS_REQUIRED",
    "FetchError",
    "FixtureHttpClient",
    "HttpResponse",
    "LIMIT_SUGGESTED",
    "LiveHttpClient",
    "MP_API_KEY_ENV",
    "MP_TOOLS",
    "MPDocument",
    "MPQuery",
    "MpClient",
    "MpToolDispatcher",
    "NonZeroExit",
    "PolicyError",
    "ProcessResult",
    "ProcessTimeout",
    "ProcessToolSpec",
    "QueryError",
    "REFERENCE_SCHEMAS",
    "STRUCTURE_TOOL",
    "TokenBucket",
    "ValidationError",
    "fetch_reference",
    "mp_tool",
    "query_params",
    "render_command",
    "render_documents",
    "render_observation",
    "run_process_tool",
    "validate_args",
]
