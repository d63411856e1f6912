"""Crystal structure model, parsing, editing, and periodic geometry."""

from .elements import ELEMENT_SYMBOLS, is_valid_species, split_species
from .geometry import (
    GeometrySummary,
    NeighborPair,
    auto_bond_cutoff,
    bond_angles,
    geometry_summary,
    neighbor_list,
    neighbor_vectors,
    structure_delta,
)
from .structure import (
    CollisionError,
    FormatError,
    Lattice,
    Site,
    StructureDoc,
    insert_site,
    make_supercell,
    parse_structure_doc,
    structure_to_doc,
    volume,
)

__all__ = [
    "ELEMENT_SYMBOLS",
    "CollisionError",
    "FormatError",
    "GeometrySummary",
    "Lattice",
    "NeighborPair",
    "Site",
    "StructureDoc",
    "auto_bond_cutoff",
    "bond_angles",
    "geometry_summary",
    "insert_site",
    "is_valid_species",
    "make_supercell",
    "neighbor_list",
    "neighbor_vectors",
    "parse_structure_doc",
    "split_species",
    "structure_delta",
    "structure_to_doc",
    "volume",
]
