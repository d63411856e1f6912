"""Leaf tool dispatcher: endpoint queries, reference lookups, process tools."""

from __future__ import annotations

import json
import logging
from typing import Any, Mapping

from ..tooling import (
    DispatchContext,
    DispatchResult,
    ToolError,
    ToolParam,
    ToolSchema,
    unknown_tool_observation,
)
from .client import MpClient
from .errors import ValidationError
from .http import HttpClient
from .observations import DEFAULT_BYTE_BUDGET, render_documents, render_observation
from .process import ProcessToolSpec, run_process_tool
from .references import fetch_reference
from .schemas import MP_TOOLS
from .validation import validate_args

logger = logging.getLogger(__name__)

STRUCTURE_TOOL = "search_materials_structure__get"

REFERENCE_SCHEMAS = {
    "arxiv": ToolSchema(
        name="arxiv",
        description="Search arXiv and return the top result titles with abstracts.",
        params=(ToolParam("query", "string", True, "free-text search query"),),
    ),
    "wikipedia": ToolSchema(
        name="wikipedia",
        description="Search Wikipedia and return the top result titles with summaries.",
        params=(ToolParam("query", "string", True, "free-text search query"),),
    ),
}


def _query_text(payload: Any, source: str) -> str:
    if isinstance(payload, str):
        return payload
    if isinstance(payload, Mapping) and isinstance(payload.get("query"), str):
        return payload["query"]
    return json.dumps(payload) if payload is not None else ""


class MpToolDispatcher:
    """Resolves the MP endpoint roster plus configured reference/process tools."""

    def __init__(
        self,
        client: MpClient | None = None,
        reference_http: HttpClient | None = None,
        process_tools: Mapping[str, ProcessToolSpec] | None = None,
        byte_budget: int = DEFAULT_BYTE_BUDGET,
    ):
        self.client = client
        self.reference_http = reference_http
        self.process_tools = dict(process_tools or {})
        self.byte_budget = byte_budget

    def known_names(self) -> list[str]:
        names = []
        if self.client is not None:
            names.extend(MP_TOOLS)
        if self.reference_http is not None:
            names.extend(REFERENCE_SCHEMAS)
        names.extend(self.process_tools)
        return names

    def is_agent(self, name: str) -> bool:
        return False

    def schema(self, name: str) -> ToolSchema | None:
        if self.client is not None and name in MP_TOOLS:
            return MP_TOOLS[name]
        if self.reference_http is not None and name in REFERENCE_SCHEMAS:
            return REFERENCE_SCHEMAS[name]
        spec = self.process_tools.get(name)
        if spec is not None:
            return ToolSchema(name=spec.name, description=spec.description)
        return None

    def dispatch(self, name: str, payload: Any, ctx: DispatchContext) -> DispatchResult:
        try:
            if self.client is not None and name in MP_TOOLS:
                return self._dispatch_mp(name, payload, ctx)
            if self.reference_http is not None and name in REFERENCE_SCHEMAS:
                observation = fetch_reference(name, _query_text(payload, name), self.reference_http)
                return DispatchResult(observation=observation)
            if name in self.process_tools:
                return self._dispatch_process(name, payload)
        except ToolError as err:
            return DispatchResult(observation=err.observation)
        return DispatchResult(observation=unknown_tool_observation(name, self.known_names()))

    def _dispatch_mp(self, name: str, payload: Any, ctx: DispatchContext) -> DispatchResult:
        query = validate_args(MP_TOOLS[name], payload)
        docs = self.client.execute_query(query)
        if name == STRUCTURE_TOOL and ctx.workspace is not None:
            saved = self._save_structures(docs, ctx)
            if saved:
                return DispatchResult(
                    observation="All retrieved structures are saved as Pymatgen Structure "
                    f"JSON files to the following paths: {', '.join(saved)}"
                )
        return DispatchResult(observation=render_documents(docs, self.byte_budget))

    def _save_structures(self, docs, ctx: DispatchContext) -> list[str]:
        ctx.workspace.mkdir(parents=True, exist_ok=True)
        saved = []
        for doc in docs:
            structure = doc.payload.get("structure")
            if structure is None:
                continue
            material_id = doc.material_id or f"structure-{len(saved)}"
            filename = f"{material_id}.json"
            (ctx.workspace / filename).write_text(json.dumps(structure, indent=2))
            saved.append(filename)
        return saved

    def _dispatch_process(self, name: str, payload: Any) -> DispatchResult:
        spec = self.process_tools[name]
        if payload is not None and not isinstance(payload, Mapping):
            raise ValidationError(name, "input must be a JSON object of placeholder values")
        result = run_process_tool(spec, payload)
        observation = result.stdout_tail or "(no output)"
        if result.artifacts:
            observation += f"\nArtifacts: {', '.join(result.artifacts)}"
        return DispatchResult(observation=render_observation(observation, self.byte_budget))
