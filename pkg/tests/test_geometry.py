import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraenkel.geometry import (
    Disk,
    GeometryError,
    Region,
    SimplePolygon,
    dilated_union_area,
    disk_polygon,
    disk_polygon_intersection_area,
    intersection_area_many,
    lens_area,
    monte_carlo_intersection_area,
    monte_carlo_lens_area,
    polygon_area,
    regular_polygon,
    symmetric_difference_area,
)

from conftest import random_convex_polygon, rect


def mp_lens(r1, r2, d):
    """Lens area in 50-digit arithmetic via the segment formula."""
    mpmath.mp.dps = 50
    r1, r2, d = mpmath.mpf(r1), mpmath.mpf(r2), mpmath.mpf(d)
    x = (d * d + r1 * r1 - r2 * r2) / (2 * d)  # chord abscissa from center 1

    def seg(r, h):
        # area of the circular segment beyond distance h from the center
        return r * r * mpmath.acos(h / r) - h * mpmath.sqrt(r * r - h * h)

    return float(seg(r1, x) + seg(r2, d - x))


def fan_area(v):
    v = np.asarray(v, dtype=float)
    o = v[0]
    return math.fsum(
        0.5 * ((v[i][0] - o[0]) * (v[i + 1][1] - o[1]) - (v[i + 1][0] - o[0]) * (v[i][1] - o[1]))
        for i in range(1, len(v) - 1)
    )


class TestPolygonArea:
    def test_unit_square(self):
        assert polygon_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == 1.0

    def test_clockwise_raw_is_negative(self):
        assert polygon_area([(0, 0), (0, 1), (1, 1), (1, 0)]) == -1.0

    def test_triangle(self):
        assert polygon_area([(0, 0), (4, 0), (0, 3)]) == 6.0

    def test_collinear_raises(self):
        with pytest.raises(GeometryError):
            polygon_area([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(GeometryError):
            SimplePolygon([(0, 0), (1, 1), (2, 2)])

    def test_simple_polygon_reorients(self):
        p = SimplePolygon([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert p.area == 1.0
        assert polygon_area(p) == 1.0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_matches_fan_triangulation(self, seed):
        rng = np.random.default_rng(seed)
        p = random_convex_polygon(rng, 10).components[0]
        assert polygon_area(p) == pytest.approx(fan_area(p.vertices), rel=1e-12, abs=1e-15)

    def test_nonconvex_fan_from_kernel_vertex(self):
        # star-shaped about its first vertex, so the fan is a valid oracle
        v = [(0, 0), (2, -1), (1, 0.5), (2, 2), (-1, 1)]
        assert polygon_area(v) == pytest.approx(fan_area(v), rel=1e-14)


class TestLens:
    def test_disjoint(self):
        assert lens_area(1, 1, 2) == 0.0
        assert lens_area(1, 2, 5) == 0.0

    def test_contained(self):
        assert lens_area(1, 3, 0.5) == pytest.approx(math.pi)
        assert lens_area(2, 2, 0) == pytest.approx(4 * math.pi)

    def test_negative_input(self):
        with pytest.raises(GeometryError):
            lens_area(-1, 1, 1)
        with pytest.raises(GeometryError):
            lens_area(1, 1, -0.1)

    def test_unit_lens_at_distance_one(self):
        # 2 pi / 3 - sqrt(3) / 2, the classical vesica piscis
        assert lens_area(1, 1, 1) == pytest.approx(2 * math.pi / 3 - math.sqrt(3) / 2, rel=1e-14)

    @settings(max_examples=100, deadline=None)
    @given(
        st.floats(0.1, 3.0),
        st.floats(0.1, 3.0),
        st.floats(0.01, 0.99),
    )
    def test_against_high_precision(self, r1, r2, t):
        lo, hi = abs(r1 - r2), r1 + r2
        d = lo + t * (hi - lo)
        assert lens_area(r1, r2, d) == pytest.approx(mp_lens(r1, r2, d), rel=1e-9, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0.1, 3.0), st.floats(0.1, 3.0), st.floats(0, 6.0))
    def test_symmetric(self, r1, r2, d):
        assert lens_area(r1, r2, d) == pytest.approx(lens_area(r2, r1, d), rel=1e-12, abs=1e-14)

    def test_nonincreasing_and_continuous(self):
        for r1, r2 in [(1, 1), (1, 0.6), (2.5, 1.2)]:
            ds = np.linspace(abs(r1 - r2), r1 + r2, 400)
            vals = np.array([lens_area(r1, r2, d) for d in ds])
            assert np.all(np.diff(vals) <= 1e-12)
            assert vals[0] == pytest.approx(math.pi * min(r1, r2) ** 2, rel=1e-9)
            assert vals[-1] == pytest.approx(0.0, abs=1e-12)

    def test_monte_carlo_oracle(self):
        est = monte_carlo_lens_area(1.0, 0.7, 1.1, samples=2_000_000, seed=4)
        assert abs(est.value - lens_area(1.0, 0.7, 1.1)) <= 4 * est.stderr


class TestDiskPolygon:
    def test_disk_inside_square(self):
        b = Disk((0.5, 0.5), 0.3)
        assert disk_polygon_intersection_area(b, rect(0, 0, 1, 1)) == pytest.approx(math.pi * 0.09, rel=1e-13)

    def test_square_inside_disk(self):
        assert disk_polygon_intersection_area(Disk((0.5, 0.5), 5), rect(0, 0, 1, 1)) == pytest.approx(1.0, rel=1e-13)

    def test_half_disk(self):
        # disk centred on an edge of a large square
        b = Disk((0.0, 0.0), 1.0)
        assert disk_polygon_intersection_area(b, rect(0, -5, 5, 5)) == pytest.approx(math.pi / 2, rel=1e-13)

    def test_quarter_disk(self):
        b = Disk((0.0, 0.0), 1.0)
        assert disk_polygon_intersection_area(b, rect(0, 0, 5, 5)) == pytest.approx(math.pi / 4, rel=1e-13)

    def test_disjoint(self):
        assert disk_polygon_intersection_area(Disk((5, 5), 1), rect(0, 0, 1, 1)) == 0.0

    def test_disk_vs_polygonal_disk_is_lens(self):
        # a 4096-gon with vertices on the circle approximates the lens from inside
        other = Region((disk_polygon(Disk((1.2, 0), 0.8), 4096, equal_area=False),))
        exact = lens_area(1.0, 0.8, 1.2)
        got = disk_polygon_intersection_area(Disk((0, 0), 1.0), other)
        assert got <= exact + 1e-12
        assert got == pytest.approx(exact, rel=1e-5)

    def test_multi_component_adds(self):
        a, b = rect(0, 0, 1, 1), rect(2, 0, 3, 1)
        both = Region(a.components + b.components)
        d = Disk((1.5, 0.5), 0.9)
        assert disk_polygon_intersection_area(d, both) == pytest.approx(
            disk_polygon_intersection_area(d, a) + disk_polygon_intersection_area(d, b), rel=1e-13
        )

    def test_bounds_hold(self, convex_corpus):
        rng = np.random.default_rng(1)
        for r in convex_corpus:
            c = rng.uniform(-0.2, 1.2, size=(30, 2))
            rad = float(rng.uniform(0.05, 0.8))
            v = intersection_area_many(c, rad, r)
            assert np.all(v >= 0)
            assert np.all(v <= min(math.pi * rad * rad, r.area) + 1e-15)

    def test_monte_carlo_oracle_50_pairs(self):
        rng = np.random.default_rng(77)
        for _ in range(50):
            r = random_convex_polygon(rng, 9)
            b = Disk(rng.uniform(0.2, 0.8, 2), float(rng.uniform(0.1, 0.5)))
            est = monte_carlo_intersection_area(b, r, samples=200_000, seed=int(rng.integers(1 << 30)))
            exact = disk_polygon_intersection_area(b, r)
            assert abs(est.value - exact) <= 4 * est.stderr + 1e-12


class TestSymmetricDifference:
    def test_1024_gon(self):
        d = Disk((0.3, -0.2), 1.7)
        poly = Region((disk_polygon(d),))
        assert symmetric_difference_area(d, poly) / poly.area <= 1e-3

    def test_disk_polygon_area_error_bound(self):
        d = Disk((0, 0), 1.0)
        for n in (64, 256, 1024):
            p = disk_polygon(d, n, equal_area=False)
            assert abs(p.area - d.area()) <= d.area() * 2 * math.pi**2 / n**2

    def test_equal_area_polygon(self):
        d = Disk((0, 0), 2.0)
        assert disk_polygon(d).area == pytest.approx(d.area(), rel=1e-12)

    def test_far_disk(self):
        d = Disk((10, 10), 1.0)
        r = rect(0, 0, 1, 1)
        assert symmetric_difference_area(d, r) == pytest.approx(math.pi + 1.0)


class TestRegion:
    def test_centroid_and_transform(self):
        r = rect(0, 0, 2, 1)
        assert r.centroid == pytest.approx((1.0, 0.5))
        assert r.translated(1, 2).centroid == pytest.approx((2.0, 2.5))
        assert r.scaled(3).area == pytest.approx(18.0)
        assert r.rotated(0.7).area == pytest.approx(2.0)

    def test_contains(self):
        r = rect(0, 0, 1, 1)
        assert r.contains(np.array([[0.5, 0.5], [1.5, 0.5]])).tolist() == [True, False]

    def test_diameter(self):
        assert rect(0, 0, 3, 4).diameter == pytest.approx(5.0)
        assert Region((regular_polygon(64),)).diameter == pytest.approx(2.0)

    def test_is_simple(self):
        assert SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]).is_simple()
        assert not SimplePolygon([(0, 0), (2, 2), (2, 0), (0, 1)]).is_simple()

    def test_invalid_disk(self):
        with pytest.raises(GeometryError):
            Disk((0, 0), 0.0)


class TestDilatedUnion:
    def test_single_disk(self):
        est = dilated_union_area([Disk((0, 0), 1.0)], 0.5, rng_seed=3, samples=400_000)
        assert abs(est.value - math.pi * 2.25) <= 4 * est.stderr

    def test_reproducible(self):
        disks = [Disk((0, 0), 1.0), Disk((2, 0), 1.0)]
        a = dilated_union_area(disks, 1.0, rng_seed=9, samples=100_000)
        b = dilated_union_area(disks, 1.0, rng_seed=9, samples=100_000)
        assert a == b

    def test_errors(self):
        with pytest.raises(GeometryError):
            dilated_union_area([], 1.0)
        with pytest.raises(GeometryError):
            dilated_union_area([Disk((0, 0), 1)], -1.0)
