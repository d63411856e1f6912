"""Periodic geometry: neighbor enumeration, bond angles, structure comparison.

All distances use explicit periodic-image search with per-axis ranges derived
from the lattice-plane spacings, so results stay correct for skewed cells
rather than assuming the nearest 27 images suffice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .structure import StructureDoc


@dataclass(frozen=True)
class NeighborPair:
    """Site ``j`` (shifted by ``image`` lattice vectors) neighbors site ``i``."""

    i: int
    j: int
    distance: float
    image: tuple[int, int, int]


def _image_ranges(s: StructureDoc, cutoff: float) -> tuple[int, int, int]:
    spacings = s.lattice.plane_spacings()
    # Base deltas are wrapped to [-0.5, 0.5]; one extra shell of slack covers
    # the wrap plus float rounding.
    return tuple(int(math.ceil(cutoff / h + 0.5)) + 1 for h in spacings)


def neighbor_list(s: StructureDoc, cutoff: float) -> list[NeighborPair]:
    """All (i, j, image) pairs with 0 < |r_j + image @ L - r_i| <= cutoff.

    Every image within the cutoff is reported, so a site can neighbor several
    images of the same site (including itself). The zero-distance self pair is
    excluded.
    """
    if cutoff <= 0:
        raise ValueError(f"cutoff must be positive, got {cutoff!r}")
    frac = s.frac_array
    n = len(frac)
    matrix = s.lattice.array

    delta = frac[None, :, :] - frac[:, None, :]  # (i, j, 3): f_j - f_i
    base_shift = -np.round(delta)
    delta_wrapped = delta + base_shift

    ra, rb, rc = _image_ranges(s, cutoff)
    offsets = np.array(
        [(a, b, c)
         for a in range(-ra, ra + 1)
         for b in range(-rb, rb + 1)
         for c in range(-rc, rc + 1)],
        dtype=float,
    )

    pairs: list[NeighborPair] = []
    # (offsets, i, j, 3) can be large for big cells; chunk over offsets.
    for off in offsets:
        disp = (delta_wrapped + off) @ matrix
        dist = np.linalg.norm(disp, axis=-1)
        ii, jj = np.nonzero(dist <= cutoff + 1e-12)
        for i, j in zip(ii.tolist(), jj.tolist()):
            image = base_shift[i, j] + off
            if i == j and not image.any():
                continue
            d = float(dist[i, j])
            if d <= 0.0:
                continue
            pairs.append(
                NeighborPair(i=i, j=j, distance=d, image=tuple(int(x) for x in image))
            )
    pairs.sort(key=lambda p: (p.i, p.distance, p.j, p.image))
    return pairs


def _vectors_by_center(s: StructureDoc, cutoff: float) -> dict[int, list[np.ndarray]]:
    frac = s.frac_array
    matrix = s.lattice.array
    out: dict[int, list[np.ndarray]] = {}
    for p in neighbor_list(s, cutoff):
        vec = (frac[p.j] + np.array(p.image, dtype=float) - frac[p.i]) @ matrix
        out.setdefault(p.i, []).append(vec)
    return out


def neighbor_vectors(s: StructureDoc, center_index: int, cutoff: float) -> list[np.ndarray]:
    """Cartesian vectors from one site to each of its neighbors."""
    return _vectors_by_center(s, cutoff).get(center_index, [])


def bond_angles(s: StructureDoc, center_species: str, cutoff: float) -> list[float]:
    """Angles n1-center-n2 (degrees) over distinct neighbor pairs per center.

    Neighbors are counted per (site, image), so periodic images of the same
    site form angles too.
    """
    by_center = _vectors_by_center(s, cutoff)
    angles: list[float] = []
    for idx, site in enumerate(s.sites):
        if site.element != center_species:
            continue
        vecs = by_center.get(idx, [])
        for a in range(len(vecs)):
            for b in range(a + 1, len(vecs)):
                cosang = float(
                    np.dot(vecs[a], vecs[b])
                    / (np.linalg.norm(vecs[a]) * np.linalg.norm(vecs[b]))
                )
                angles.append(math.degrees(math.acos(max(-1.0, min(1.0, cosang)))))
    return angles


def auto_bond_cutoff(s: StructureDoc, stretch: float = 1.25) -> float:
    """First-shell bond cutoff: shortest interatomic distance times ``stretch``."""
    # A site's own image along the shortest lattice vector sits exactly one
    # row-norm away, so this probe always finds at least one neighbor.
    probe = float(np.min(np.linalg.norm(s.lattice.array, axis=1)))
    pairs = neighbor_list(s, probe)
    dmin = min(p.distance for p in pairs)
    return dmin * stretch


@dataclass(frozen=True)
class GeometrySummary:
    mean_bond: float
    volume: float
    mean_angle: float


def geometry_summary(s: StructureDoc, cutoff: float | None = None,
                     center_species: str | None = None) -> GeometrySummary:
    """Mean first-shell bond length, cell volume, and mean bond angle."""
    cut = auto_bond_cutoff(s) if cutoff is None else cutoff
    pairs = neighbor_list(s, cut)
    bonds = [p.distance for p in pairs]
    if center_species is None:
        angles = []
        for element in sorted({site.element for site in s.sites}):
            angles.extend(bond_angles(s, element, cut))
    else:
        angles = bond_angles(s, center_species, cut)
    mean_bond = sum(bonds) / len(bonds) if bonds else float("nan")
    mean_angle = sum(angles) / len(angles) if angles else float("nan")
    return GeometrySummary(mean_bond=mean_bond, volume=s.lattice.volume, mean_angle=mean_angle)


def structure_delta(a: StructureDoc, b: StructureDoc, *,
                    cutoff: float | None = None,
                    center_species: str | None = None) -> dict[str, float]:
    """Percentage errors of ``a`` relative to reference ``b``.

    Errors are 100 * (x_a - x_b) / x_b for mean bond length, volume, and
    mean angle, so a positive value means ``a`` overshoots the reference.
    """
    sa = geometry_summary(a, cutoff=cutoff, center_species=center_species)
    sb = geometry_summary(b, cutoff=cutoff, center_species=center_species)

    def pct(x: float, ref: float) -> float:
        return 100.0 * (x - ref) / ref

    return {
        "bond_err_pct": pct(sa.mean_bond, sb.mean_bond),
        "volume_err_pct": pct(sa.volume, sb.volume),
        "angle_err_pct": pct(sa.mean_angle, sb.mean_angle),
    }
