import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from fraenkel.geometry import Region, SimplePolygon, regular_polygon


def random_convex_polygon(rng: np.random.Generator, n_points: int = 12) -> Region:
    """Convex hull of uniform points in the unit square, stretched by a random factor."""
    pts = rng.uniform(0, 1, size=(n_points, 2)) * np.array([1.0, rng.uniform(0.3, 1.0)])
    hull = pts[ConvexHull(pts).vertices]
    return Region((SimplePolygon(hull),))


@pytest.fixture(scope="session")
def convex_corpus():
    rng = np.random.default_rng(20240611)
    return [random_convex_polygon(rng, int(rng.integers(5, 16))) for _ in range(20)]


@pytest.fixture(scope="session")
def hexagon():
    return Region((regular_polygon(6),))


def rect(x0, y0, x1, y1) -> Region:
    return Region.from_polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


HEX_ASYMMETRY = 0.074465754  # value quoted in the reference text
BLIND = math.pi / math.sqrt(12)


# one (criterion, passed, detail) entry per acceptance criterion, printed at the end
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
