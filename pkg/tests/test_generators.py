import math

import numpy as np
import pytest

from fraenkel.asymmetry import fraenkel_asymmetry, grid_scan_asymmetry
from fraenkel.generators import (
    GeneratorSpec,
    generate,
    lattice_disks,
    packing_density,
    packing_disks,
)
from fraenkel.geometry import Disk, GeometryError, Region
from fraenkel.partition import evaluate_functional

from conftest import BLIND, rect


class TestSpec:
    def test_bad_kind(self):
        with pytest.raises(ValueError):
            GeneratorSpec("triangle", 10)

    def test_bad_count(self):
        with pytest.raises(ValueError):
            GeneratorSpec("hex", 0)

    @pytest.mark.parametrize("ratio", [0.0, 1.5, -0.2])
    def test_bad_ratio(self, ratio):
        with pytest.raises(ValueError):
            GeneratorSpec("two_scale", 10, params={"ratio": ratio})


class TestGenerate:
    @pytest.mark.parametrize(
        "spec",
        [
            GeneratorSpec("hex", 200),
            GeneratorSpec("square", 100),
            GeneratorSpec("disk_pack", 200),
            GeneratorSpec("two_scale", 200, params={"ratio": 0.8}),
            GeneratorSpec("voronoi", 200, seed=5),
            GeneratorSpec("hex", 60, domain=rect(-1, 0, 2, 0.5)),
        ],
        ids=lambda s: s.kind,
    )
    def test_valid_partition(self, spec):
        p = generate(spec)
        rep = p.validate(samples=30_000)
        assert rep.ok
        assert rep.coverage == pytest.approx(1.0, abs=1e-6)

    def test_hex_cell_count_and_congruence(self):
        p = generate(GeneratorSpec("hex", 400))
        assert 350 <= len(p) <= 500
        interior = [p.cells[i] for i in np.flatnonzero(p.interior_mask())]
        areas = np.array([c.area for c in interior])
        assert np.allclose(areas, 1 / 400, rtol=1e-9)
        assert all(len(c.components[0]) == 6 for c in interior)

    def test_square_exact(self):
        p = generate(GeneratorSpec("square", 100))
        assert len(p) == 100
        assert np.allclose(p.cell_areas, 0.01, rtol=1e-12)
        assert evaluate_functional(p).stats.d_sum == 0.0

    def test_deterministic(self):
        for spec in (GeneratorSpec("hex", 80), GeneratorSpec("voronoi", 80, seed=11)):
            a, b = generate(spec), generate(spec)
            assert len(a) == len(b)
            assert all(np.array_equal(x.all_vertices, y.all_vertices) for x, y in zip(a.cells, b.cells))

    def test_voronoi_seed_changes(self):
        a = generate(GeneratorSpec("voronoi", 80, seed=1))
        b = generate(GeneratorSpec("voronoi", 80, seed=2))
        assert len(a) != len(b) or not np.array_equal(a.cells[0].all_vertices, b.cells[0].all_vertices)

    def test_two_scale_ratio_one_is_disk_pack(self):
        a = generate(GeneratorSpec("disk_pack", 150))
        b = generate(GeneratorSpec("two_scale", 150, params={"ratio": 1.0}))
        assert len(a) == len(b)
        assert np.allclose(a.cell_areas, b.cell_areas, rtol=0, atol=1e-9)

    def test_disk_pack_asymmetries(self):
        p = generate(GeneratorSpec("disk_pack", 300))
        idx = np.flatnonzero(p.interior_mask())
        R = packing_disks(GeneratorSpec("disk_pack", 300))[0].radius
        disk_area = math.pi * R * R
        seen_disk = seen_gap = False
        for i in idx[:80]:
            c = p.cells[i]
            a = fraenkel_asymmetry(c).value
            # disk cells are inscribed 1026-gons; interstitials are far smaller
            if c.area > 0.5 * disk_area:
                assert a <= 1e-3
                seen_disk = True
            else:
                assert a >= 0.5
                seen_gap = True
        assert seen_disk and seen_gap

    def test_interstitial_grid_oracle(self):
        p = generate(GeneratorSpec("disk_pack", 300))
        R = packing_disks(GeneratorSpec("disk_pack", 300))[0].radius
        idx = np.flatnonzero(p.interior_mask())
        gap = next(p.cells[i] for i in idx if p.cells[i].area < 0.5 * math.pi * R * R)
        oracle, _ = grid_scan_asymmetry(gap, 200)
        assert oracle >= 0.5
        assert fraenkel_asymmetry(gap).value <= oracle + 1e-9

    @pytest.mark.parametrize("params", [{"radius": -1.0}, {"vertices": 100}, {"vertices": 0}])
    def test_bad_packing_params(self, params):
        with pytest.raises(ValueError):
            GeneratorSpec("disk_pack", 10, params=params)


class TestPackingDensity:
    def test_single_disk(self):
        assert packing_density([Disk((0.5, 0.5), 0.2)], rect(0, 0, 1, 1)) == pytest.approx(math.pi * 0.04)

    def test_hex_lattice(self):
        w = rect(0, 0, 40, 40)
        assert packing_density(lattice_disks("hex", 1.0, w), w) == pytest.approx(BLIND, abs=0.01)

    def test_square_lattice(self):
        w = rect(0, 0, 40, 40)
        assert packing_density(lattice_disks("square", 1.0, w), w) == pytest.approx(math.pi / 4, abs=0.01)

    def test_overlap_rejected(self):
        with pytest.raises(GeometryError):
            packing_density([Disk((0, 0), 1), Disk((1.5, 0), 1)], rect(-2, -2, 3, 2))

    def test_bad_window(self):
        with pytest.raises(GeometryError):
            packing_density([Disk((0, 0), 1)], Region.from_polygon([(0, 0), (1, 0), (2, 0)]))

    @pytest.mark.parametrize("kind,ratio", [("disk_pack", 1.0), ("two_scale", 0.8), ("two_scale", 0.75)])
    def test_blind_bound(self, kind, ratio):
        rng = np.random.default_rng(3)
        for _ in range(3):
            spec = GeneratorSpec(kind, 400, params={"ratio": ratio})
            disks = packing_disks(spec)
            R = max(d.radius for d in disks)
            x, y = rng.uniform(0.1, 0.3, 2)
            side = 20 * R
            w = rect(x, y, x + side, y + side)
            assert packing_density(disks, w) <= BLIND + 0.01
