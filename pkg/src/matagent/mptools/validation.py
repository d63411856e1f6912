"""Argument validation against tool schemas, producing canonical queries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping
from urllib.parse import urlencode

from ..tooling import ToolSchema
from .errors import ValidationError
from .schemas import FIELDS_REQUIRED


@dataclass(frozen=True)
class MPQuery:
    tool: str
    args: tuple[tuple[str, Any], ...]  # canonicalized, sorted by name
    endpoint_path: str
    resolved_url: str
    fields: str
    limit: int | None
    sort_fields: str

    def args_dict(self) -> dict[str, Any]:
        return dict(self.args)


def _canonical_comma_list(tool: str, name: str, value: Any) -> str:
    if isinstance(value, str):
        items = value.split(",")
    elif isinstance(value, (list, tuple)) and all(isinstance(x, str) for x in value):
        items = list(value)
    else:
        raise ValidationError(
            tool, f"`{name}` must be a comma-separated string (or list of strings), got {value!r}"
        )
    cleaned = [x.strip() for x in items if x.strip()]
    return ",".join(cleaned)


def _check_kind(tool: str, name: str, kind: str, value: Any) -> Any:
    if kind == "comma-list":
        return _canonical_comma_list(tool, name, value)
    if kind == "string":
        if not isinstance(value, str):
            raise ValidationError(tool, f"`{name}` must be a string, got {value!r}")
        return value
    if kind == "integer":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(tool, f"`{name}` must be an integer, got {value!r}")
        return value
    if kind == "number":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(tool, f"`{name}` must be a number, got {value!r}")
        return value
    if kind == "boolean":
        if not isinstance(value, bool):
            raise ValidationError(tool, f"`{name}` must be a boolean, got {value!r}")
        return value
    raise ValidationError(tool, f"`{name}` has unsupported kind {kind!r}")


def _wire_params(canonical: Mapping[str, Any]) -> list[tuple[str, str]]:
    params: dict[str, str] = {}
    for name, value in canonical.items():
        if name in ("fields", "limit", "sort_fields"):
            continue
        params[name] = str(value)
    if canonical.get("fields"):
        params["_fields"] = canonical["fields"]
    if canonical.get("limit") is not None:
        params["_limit"] = str(canonical["limit"])
    if canonical.get("sort_fields"):
        params["_sort_fields"] = canonical["sort_fields"]
    return sorted(params.items())


def query_params(q: MPQuery) -> list[tuple[str, str]]:
    """Wire parameters: filters plus _fields/_limit/_sort_fields, sorted."""
    return _wire_params(q.args_dict())


def validate_args(schema: ToolSchema, args: Any) -> MPQuery:
    """Check required params, value kinds, and guard rules; canonicalize.

    Raises ValidationError with a ready-to-send observation on any failure.
    """
    tool = schema.name
    if not isinstance(args, Mapping):
        raise ValidationError(tool, f"arguments must be a JSON object, got {type(args).__name__}")

    known = {p.name: p for p in schema.params}
    unknown = sorted(set(args) - set(known))
    if unknown:
        raise ValidationError(
            tool,
            f"unknown parameter(s) {', '.join(repr(u) for u in unknown)}; "
            f"valid parameters are {', '.join(sorted(known))}",
        )

    missing = [p.name for p in schema.params if p.required and p.name not in args]
    if missing:
        raise ValidationError(tool, f"missing required parameter(s): {', '.join(missing)}")

    canonical: dict[str, Any] = {}
    for name, value in args.items():
        canonical[name] = _check_kind(tool, name, known[name].kind, value)

    fields = canonical.get("fields", "")
    if FIELDS_REQUIRED in schema.guard_rules and not fields:
        raise ValidationError(tool, "`fields` must be specified in the query")

    limit = canonical.get("limit")
    if limit is not None and limit < 1:
        raise ValidationError(tool, f"`limit` must be a positive integer, got {limit}")

    resolved = schema.endpoint_path + "?" + urlencode(_wire_params(canonical))
    return MPQuery(
        tool=tool,
        args=tuple(sorted(canonical.items())),
        endpoint_path=schema.endpoint_path,
        resolved_url=resolved,
        fields=fields,
        limit=limit,
        sort_fields=canonical.get("sort_fields", ""),
    )
