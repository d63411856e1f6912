from __future__ import annotations

import math
import random

import pytest

from matagent.xtal import (
    Lattice,
    Site,
    StructureDoc,
    bond_angles,
    insert_site,
    make_supercell,
    neighbor_list,
    parse_structure_doc,
    structure_delta,
    volume,
)

from .geometry_oracle import brute_force_neighbors, min_plane_spacing


def cubic(a: float, sites) -> StructureDoc:
    return StructureDoc(
        lattice=Lattice.from_rows([[a, 0, 0], [0, a, 0], [0, 0, a]]),
        sites=tuple(Site(species=sp, frac=fr) for sp, fr in sites),
    )


def random_cell(rng: random.Random, max_sites: int = 8) -> StructureDoc:
    """Small random triclinic cell with well-separated sites."""
    while True:
        rows = [[rng.uniform(3.0, 7.0) if i == j else rng.uniform(-2.0, 2.0) for j in range(3)] for i in range(3)]
        try:
            lattice = Lattice.from_rows(rows)
        except Exception:
            continue
        if min_plane_spacing(rows) < 1.5:
            continue
        n = rng.randint(1, max_sites)
        sites = []
        for k in range(n):
            for _ in range(200):
                frac = (rng.random(), rng.random(), rng.random())
                candidate = Site(species="Si", frac=frac)
                try:
                    StructureDoc(lattice=lattice, sites=tuple(sites + [candidate]))
                except Exception:
                    continue
                sites.append(candidate)
                break
        if len(sites) == n:
            return StructureDoc(lattice=lattice, sites=tuple(sites))


class TestNeighborList:
    def test_mp149_first_shell(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        pairs = neighbor_list(s, 2.5)
        for i in (0, 1):
            mine = [p for p in pairs if p.i == i]
            assert len(mine) == 4
            for p in mine:
                assert p.distance == pytest.approx(2.36, abs=0.01)

    def test_empty_below_first_shell(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        assert neighbor_list(s, 1.0) == []

    def test_self_images_single_atom_cube(self):
        s = cubic(3.0, [("Po", (0.0, 0.0, 0.0))])
        pairs = neighbor_list(s, 3.1)
        assert len(pairs) == 6
        assert all(p.i == 0 and p.j == 0 for p in pairs)
        assert all(p.distance == pytest.approx(3.0, abs=1e-12) for p in pairs)
        images = {p.image for p in pairs}
        assert images == {
            (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
        }

    def test_symmetry(self, mp3666_doc):
        s = parse_structure_doc(mp3666_doc)
        pairs = neighbor_list(s, 3.0)
        seen = {(p.i, p.j, p.image, round(p.distance, 9)) for p in pairs}
        for p in pairs:
            mirror = (p.j, p.i, tuple(-x for x in p.image), round(p.distance, 9))
            assert mirror in seen

    def test_matches_brute_force_on_random_cells(self):
        rng = random.Random(2024)
        for _ in range(25):
            s = random_cell(rng)
            spacing = min_plane_spacing([list(r) for r in s.lattice.matrix])
            cutoff = rng.uniform(0.3, 1.0) * spacing
            got = {(p.i, p.j, p.image): p.distance for p in neighbor_list(s, cutoff)}
            expected = {
                (i, j, image): d
                for i, j, d, image in brute_force_neighbors(
                    [list(r) for r in s.lattice.matrix],
                    [list(site.frac) for site in s.sites],
                    cutoff,
                )
            }
            assert got.keys() == expected.keys()
            for key, d in expected.items():
                assert got[key] == pytest.approx(d, abs=1e-9)

    def test_translation_invariance(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        shift = (0.31, 0.77, 0.123)
        moved = StructureDoc(
            lattice=s.lattice,
            sites=tuple(
                Site(species=x.species, frac=tuple((f + dv) % 1.0 for f, dv in zip(x.frac, shift)))
                for x in s.sites
            ),
        )
        d1 = sorted(round(p.distance, 9) for p in neighbor_list(s, 4.0))
        d2 = sorted(round(p.distance, 9) for p in neighbor_list(moved, 4.0))
        assert d1 == d2
        a1 = sorted(round(a, 9) for a in bond_angles(s, "Si", 2.5))
        a2 = sorted(round(a, 9) for a in bond_angles(moved, "Si", 2.5))
        assert a1 == a2


class TestAngles:
    def test_mp149_tetrahedral(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        angles = bond_angles(s, "Si", 2.5)
        assert len(angles) == 12  # C(4,2) per Si site
        for a in angles:
            assert a == pytest.approx(109.47, abs=0.05)

    def test_li_inserted_min_angle(self, mp149_doc):
        s = insert_site(parse_structure_doc(mp149_doc), "Li", (0.5, 0.5, 0.5))
        angles = bond_angles(s, "Li", 2.4)
        assert min(angles) == pytest.approx(62.96, abs=0.1)

    def test_alternative_setting_is_tetrahedral(self, mp149_doc):
        base = parse_structure_doc(mp149_doc)
        alt = StructureDoc(
            lattice=base.lattice,
            sites=(
                Site(species="Si", frac=(0.0, 0.0, 0.0)),
                Site(species="Si", frac=(0.25, 0.25, 0.25)),
            ),
        )
        s = insert_site(alt, "Li", (0.5, 0.5, 0.5))
        li_index = len(s.sites) - 1
        shells = sorted(p.distance for p in neighbor_list(s, 2.9) if p.i == li_index)
        nearest = [d for d in shells if d <= shells[0] + 0.05]
        assert len(nearest) == 4

    def test_linear_triatomic(self):
        s = cubic(20.0, [("O", (0.4, 0.5, 0.5)), ("C", (0.5, 0.5, 0.5)), ("O", (0.6, 0.5, 0.5))])
        angles = bond_angles(s, "C", 2.5)
        assert angles == [pytest.approx(180.0, abs=1e-9)]


class TestDelta:
    def test_identity(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        d = structure_delta(s, s)
        assert d == {"bond_err_pct": 0.0, "volume_err_pct": 0.0, "angle_err_pct": 0.0}

    def test_ten_percent_volume(self, mp149_doc):
        ref = parse_structure_doc(mp149_doc)
        factor = 1.1 ** (1 / 3)
        bigger = StructureDoc(
            lattice=Lattice.from_rows([[x * factor for x in row] for row in ref.lattice.matrix]),
            sites=ref.sites,
        )
        d = structure_delta(bigger, ref)
        assert d["volume_err_pct"] == pytest.approx(10.0, abs=1e-9)
        assert d["angle_err_pct"] == pytest.approx(0.0, abs=1e-9)
        assert d["bond_err_pct"] == pytest.approx(100 * (factor - 1), abs=1e-6)


class TestProperties:
    def test_supercell_volume_property(self, mp3666_doc):
        s = parse_structure_doc(mp3666_doc)
        for factors in [(1, 1, 2), (2, 2, 1), (3, 1, 2)]:
            sc = make_supercell(s, factors)
            expected = factors[0] * factors[1] * factors[2] * volume(s)
            assert abs(sc.lattice.volume - expected) / expected < 1e-9

    def test_supercell_preserves_neighbor_distances(self, mp149_doc):
        s = parse_structure_doc(mp149_doc)
        sc = make_supercell(s, (2, 2, 2))
        base = sorted(round(p.distance, 9) for p in neighbor_list(s, 2.5) if p.i == 0)
        for i in range(len(sc.sites)):
            mine = sorted(round(p.distance, 9) for p in neighbor_list(sc, 2.5) if p.i == i)
            assert mine == base
