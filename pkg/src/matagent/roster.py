"""Default two-level agent roster: one assistant per endpoint tool.

Each assistant owns exactly one endpoint schema so its prompt stays small;
the supervisor sees assistants (plus reference and process tools) and routes
natural-language subtasks to them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .react.types import AgentSpec

ASSISTANT_TOOLS: dict[str, str] = {
    "MPSummaryExpert": "search_materials_summary__get",
    "MPThermoExpert": "search_materials_thermo__get",
    "MPElasticityExpert": "search_materials_elasticity__get",
    "MPMagnetismExpert": "search_materials_magnetism__get",
    "MPDielectricExpert": "search_materials_dielectric__get",
    "MPPiezoelectricExpert": "search_materials_piezoelectric__get",
    "MPElectronicExpert": "search_materials_electronic_structure__get",
    "MPSynthesisExpert": "search_materials_synthesis__get",
    "MPStructureRetriever": "search_materials_structure__get",
}

ASSISTANT_BLURBS: dict[str, str] = {
    "MPSummaryExpert": "Assistant agent for combined per-material summaries (composition, symmetry, headline properties).",
    "MPThermoExpert": "Assistant agent for thermodynamic data such as formation energy and energy above hull.",
    "MPElasticityExpert": "Assistant agent for elastic data: bulk, shear, and Young's moduli and anisotropy.",
    "MPMagnetismExpert": "Assistant agent for magnetic ordering and magnetization data.",
    "MPDielectricExpert": "Assistant agent for dielectric tensor data.",
    "MPPiezoelectricExpert": "Assistant agent for piezoelectric tensor data.",
    "MPElectronicExpert": "Assistant agent for electronic structure data such as band gap and fermi level.",
    "MPSynthesisExpert": "Assistant agent for text-mined synthesis recipes with literature references.",
    "MPStructureRetriever": "Assistant agent that fetches crystal structures and saves them as JSON files in the workspace.",
}


@dataclass(frozen=True)
class Roster:
    supervisor: AgentSpec
    assistants: tuple[AgentSpec, ...]
    assistant_descriptions: dict[str, str]


def build_roster(
    *,
    backend_ref: str = "default",
    supervisor_max_steps: int = 15,
    assistant_max_steps: int = 10,
    include_references: bool = True,
    process_tool_names: tuple[str, ...] = (),
    assistant_names: tuple[str, ...] = tuple(ASSISTANT_TOOLS),
) -> Roster:
    assistants = tuple(
        AgentSpec(
            name=name,
            role="assistant",
            tool_names=(ASSISTANT_TOOLS[name],),
            max_steps=assistant_max_steps,
            backend_ref=backend_ref,
        )
        for name in assistant_names
    )
    supervisor_tools = list(assistant_names)
    if include_references:
        supervisor_tools += ["arxiv", "wikipedia"]
    supervisor_tools += list(process_tool_names)
    supervisor = AgentSpec(
        name="supervisor",
        role="supervisor",
        tool_names=tuple(supervisor_tools),
        max_steps=supervisor_max_steps,
        backend_ref=backend_ref,
    )
    return Roster(
        supervisor=supervisor,
        assistants=assistants,
        assistant_descriptions={k: ASSISTANT_BLURBS[k] for k in assistant_names},
    )
