"""Periodic crystal data model and editing operations.

Structures follow the Materials Project document shape: a 3x3 lattice matrix
whose rows are lattice vectors in angstroms, and sites with fractional
coordinates (``abc``) plus a species list. Parsed coordinates are kept
byte-faithful to the document; wrapping into [0, 1) happens only through
:meth:`StructureDoc.normalized`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .elements import is_valid_species, split_species

# Two sites closer than this (after periodic wrapping) are considered the
# same position; insertion uses the looser INSERT_CLEARANCE.
IDENTITY_TOLERANCE = 0.01
INSERT_CLEARANCE = 0.5


class FormatError(ValueError):
    """Raised when a structure document is missing or has an invalid field."""


class CollisionError(ValueError):
    """Raised when a new site would land on an existing one."""

    def __init__(self, message: str, blocking_index: int):
        super().__init__(message)
        self.blocking_index = blocking_index


@dataclass(frozen=True)
class Lattice:
    """Rows of ``matrix`` are the lattice vectors a, b, c in angstroms."""

    matrix: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise FormatError("lattice.matrix must be a finite 3x3 matrix")
        if abs(float(np.linalg.det(m))) < 1e-9:
            raise FormatError("lattice.matrix is singular (degenerate lattice)")

    @classmethod
    def from_rows(cls, rows) -> Lattice:
        return cls(tuple(tuple(float(x) for x in row) for row in rows))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)

    @property
    def volume(self) -> float:
        return abs(float(np.linalg.det(self.array)))

    def to_cartesian(self, frac) -> np.ndarray:
        return np.asarray(frac, dtype=float) @ self.array

    def plane_spacings(self) -> np.ndarray:
        """Perpendicular spacing of the three lattice-plane families.

        Bounds the periodic-image search: a displacement with k-th
        fractional component f has Cartesian length >= |f| * spacing[k].
        """
        inv = np.linalg.inv(self.array)
        return 1.0 / np.linalg.norm(inv, axis=0)


@dataclass(frozen=True)
class Site:
    species: str
    frac: tuple[float, float, float]

    def __post_init__(self) -> None:
        if not is_valid_species(self.species):
            raise FormatError(f"unrecognized species {self.species!r}")
        if len(self.frac) != 3 or not all(math.isfinite(x) for x in self.frac):
            raise FormatError(f"site fractional coordinates must be 3 finite reals, got {self.frac!r}")

    @property
    def element(self) -> str:
        return split_species(self.species)[0]


@dataclass(frozen=True)
class StructureDoc:
    lattice: Lattice
    sites: tuple[Site, ...]
    source_id: str | None = None

    def __post_init__(self) -> None:
        if not self.sites:
            raise FormatError("structure must contain at least one site")
        idx = _first_coincident_pair(self.lattice, self.sites, IDENTITY_TOLERANCE)
        if idx is not None:
            i, j = idx
            raise FormatError(
                f"sites {i} and {j} coincide within {IDENTITY_TOLERANCE} angstrom"
            )

    @property
    def frac_array(self) -> np.ndarray:
        return np.array([s.frac for s in self.sites], dtype=float)

    def composition(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.sites:
            counts[s.element] = counts.get(s.element, 0) + 1
        return counts

    def normalized(self) -> StructureDoc:
        """Wrap all fractional coordinates into [0, 1)."""
        sites = tuple(
            replace(s, frac=tuple(float(x % 1.0) for x in s.frac)) for s in self.sites
        )
        return replace(self, sites=sites)


def _min_image_distance(lattice: Lattice, fa, fb) -> float:
    """Distance from fa to the nearest periodic image of fb (small-r exact)."""
    delta = np.asarray(fb, dtype=float) - np.asarray(fa, dtype=float)
    delta -= np.round(delta)
    best = float(np.linalg.norm(delta @ lattice.array))
    # Rounding each component independently can miss the true minimum in
    # skewed cells; check the adjacent image block when it matters.
    if best > 1e-12:
        offsets = np.array(
            [(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)]
        )
        cands = (delta + offsets) @ lattice.array
        best = float(np.min(np.linalg.norm(cands, axis=1)))
    return best


def _first_coincident_pair(lattice, sites, tol) -> tuple[int, int] | None:
    n = len(sites)
    if n < 2:
        return None
    frac = np.array([s.frac for s in sites], dtype=float)
    delta = frac[None, :, :] - frac[:, None, :]
    delta -= np.round(delta)
    dist = np.linalg.norm(delta @ lattice.array, axis=-1)
    iu = np.triu_indices(n, k=1)
    # Component-wise rounding never underestimates the true minimum image
    # distance, so only near-threshold pairs need the exact check.
    screen = max(4.0 * tol, 0.1)
    for i, j in zip(*iu):
        if dist[i, j] < screen and _min_image_distance(lattice, sites[i].frac, sites[j].frac) < tol:
            return int(i), int(j)
    return None


def parse_structure_doc(text: str | bytes | dict, source_id: str | None = None) -> StructureDoc:
    """Parse an MP-style structure document (JSON text or already-loaded dict).

    Requires ``lattice.matrix``, ``sites[].abc`` and ``sites[].species`` with
    at least one ``element`` entry per site; all other keys are ignored.
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"structure document is not valid JSON: {exc}") from exc
    else:
        doc = text
    if not isinstance(doc, dict):
        raise FormatError("structure document must be a JSON object")

    lattice_doc = doc.get("lattice")
    if not isinstance(lattice_doc, dict) or "matrix" not in lattice_doc:
        raise FormatError("missing field lattice.matrix")
    try:
        lattice = Lattice.from_rows(lattice_doc["matrix"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"invalid lattice.matrix: {exc}") from exc

    raw_sites = doc.get("sites")
    if not isinstance(raw_sites, list) or not raw_sites:
        raise FormatError("missing field sites")
    sites = []
    for k, raw in enumerate(raw_sites):
        if not isinstance(raw, dict) or "abc" not in raw:
            raise FormatError(f"missing field sites[{k}].abc")
        species_list = raw.get("species")
        if not isinstance(species_list, list) or not species_list:
            raise FormatError(f"missing field sites[{k}].species")
        entry = species_list[0]
        if not isinstance(entry, dict) or "element" not in entry:
            raise FormatError(f"missing field sites[{k}].species[0].element")
        label = str(entry["element"])
        if raw.get("oxidation_state") is None and entry.get("oxidation_state") is not None:
            oxi = entry["oxidation_state"]
            mag = abs(int(oxi))
            if mag:
                label = f"{label}{mag if mag > 1 else ''}{'+' if oxi > 0 else '-'}"
        abc = raw["abc"]
        if not isinstance(abc, (list, tuple)) or len(abc) != 3:
            raise FormatError(f"invalid sites[{k}].abc: expected 3 coordinates")
        sites.append(Site(species=label, frac=tuple(float(x) for x in abc)))

    sid = source_id
    if sid is None:
        raw_id = doc.get("material_id") or doc.get("source_id")
        sid = str(raw_id) if raw_id else None
    return StructureDoc(lattice=lattice, sites=tuple(sites), source_id=sid)


def structure_to_doc(s: StructureDoc) -> dict:
    """Serialize back to the MP document shape (inverse of the parser)."""
    return {
        "lattice": {"matrix": [list(row) for row in s.lattice.matrix]},
        "sites": [
            {"species": [{"element": site.element, "occu": 1}], "abc": list(site.frac), "label": site.element}
            for site in s.sites
        ],
        **({"material_id": s.source_id} if s.source_id else {}),
    }


def volume(s: StructureDoc) -> float:
    """Cell volume in cubic angstroms."""
    return s.lattice.volume


def make_supercell(s: StructureDoc, factors: tuple[int, int, int]) -> StructureDoc:
    """Replicate the cell by integer factors along each lattice vector."""
    na, nb, nc = (int(x) for x in factors)
    if na < 1 or nb < 1 or nc < 1:
        raise ValueError(f"supercell factors must be positive integers, got {factors!r}")
    if (na, nb, nc) == (1, 1, 1):
        return s
    scale = np.diag([na, nb, nc]).astype(float)
    lattice = Lattice.from_rows(scale @ s.lattice.array)
    div = np.array([na, nb, nc], dtype=float)
    sites = []
    for site in s.sites:
        base = np.asarray(site.frac, dtype=float)
        for i in range(na):
            for j in range(nb):
                for k in range(nc):
                    frac = (base + np.array([i, j, k])) / div
                    sites.append(replace(site, frac=tuple(float(x) for x in frac)))
    return StructureDoc(lattice=lattice, sites=tuple(sites), source_id=s.source_id)


def insert_site(s: StructureDoc, species: str, frac: tuple[float, float, float],
                clearance: float = INSERT_CLEARANCE) -> StructureDoc:
    """Append one site, refusing positions within ``clearance`` of any site."""
    new_site = Site(species=species, frac=tuple(float(x) for x in frac))
    for i, existing in enumerate(s.sites):
        d = _min_image_distance(s.lattice, existing.frac, new_site.frac)
        if d < clearance:
            raise CollisionError(
                f"new {species} site at {tuple(new_site.frac)} is {d:.3f} angstrom from "
                f"site {i} ({existing.species}); minimum clearance is {clearance}",
                blocking_index=i,
            )
    return replace(s, sites=s.sites + (new_site,))
