"""Tool schemas for the Materials Project endpoint roster."""

from __future__ import annotations

from ..tooling import ToolParam, ToolSchema

FIELDS_REQUIRED = "fields-required"
LIMIT_SUGGESTED = "limit-suggested"


def _common_params(*extra: ToolParam) -> tuple[ToolParam, ...]:
    return extra + (
        ToolParam("fields", "comma-list", False,
                  "comma-separated document fields to return; keep this narrow"),
        ToolParam("limit", "integer", False, "maximum number of documents to return"),
        ToolParam("sort_fields", "comma-list", False,
                  "fields to sort by, ascending; prefix a field with '-' for descending"),
    )


_FILTERS = (
    ToolParam("material_ids", "comma-list", False, "comma-separated material ids, e.g. mp-149"),
    ToolParam("formula", "string", False, "chemical formula, e.g. LiTaO3"),
    ToolParam("chemsys", "string", False, "dash-separated chemical system, e.g. Si-O"),
    ToolParam("elements", "comma-list", False, "elements that must be present"),
)


def _search_tool(endpoint: str, description: str, *extra: ToolParam) -> ToolSchema:
    return ToolSchema(
        name=f"search_materials_{endpoint}__get",
        description=description,
        params=_common_params(*_FILTERS, *extra),
        endpoint_path=f"/materials/{endpoint}/",
        guard_rules=(FIELDS_REQUIRED, LIMIT_SUGGESTED),
    )


MP_TOOLS: dict[str, ToolSchema] = {
    t.name: t
    for t in (
        _search_tool(
            "summary",
            "Combined per-material summary: composition, symmetry, and headline computed properties.",
        ),
        _search_tool(
            "thermo",
            "Thermodynamic data: formation energy per atom, energy above hull, stability.",
        ),
        _search_tool(
            "elasticity",
            "Elastic data: bulk modulus (k_vrh), shear modulus (g_vrh), Young's modulus, anisotropy.",
        ),
        _search_tool(
            "magnetism",
            "Magnetic data: ordering label, total magnetization, magnetization per formula unit.",
        ),
        _search_tool(
            "dielectric",
            "Dielectric tensors and derived constants from perturbation theory.",
        ),
        _search_tool(
            "piezoelectric",
            "Piezoelectric tensors and maximal directional response.",
        ),
        _search_tool(
            "electronic_structure",
            "Electronic structure data: band gap, fermi level, band edges.",
        ),
        _search_tool(
            "synthesis",
            "Text-mined synthesis recipes: precursors, operations, conditions, and source DOIs.",
            ToolParam("keywords", "comma-list", False, "keywords to match in recipe text"),
        ),
        _search_tool(
            "structure",
            "Crystal structures as JSON documents; retrieved files are saved to the workspace.",
        ),
    )
}


def mp_tool(name: str) -> ToolSchema:
    return MP_TOOLS[name]
