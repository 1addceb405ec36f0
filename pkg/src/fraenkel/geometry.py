"""Planar area primitives.

Regions are finite unions of simple polygons. Everything that involves a disk
is computed exactly through a Green's theorem decomposition of the polygon
boundary into straight pieces (inside the circle) and circular arcs (outside
the circle), so no polygonal approximation of the circle is ever made.

The Monte Carlo estimators at the bottom of the module are oracles: they use
point-in-polygon sampling and share no code with the exact routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from numba import njit

# Relative tolerance for geometric predicates.
REL_TOL = 1e-12
# Default vertex count for polygonal approximations of disks.
DEFAULT_DISK_VERTICES = 1024


class GeometryError(ValueError):
    """Invalid geometric input (degenerate polygon, negative radius, ...)."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        c = Point(float(self.center[0]), float(self.center[1]))
        object.__setattr__(self, "center", c)
        if not (math.isfinite(c.x) and math.isfinite(c.y)):
            raise GeometryError("disk center must be finite")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise GeometryError(f"disk radius must be positive, got {self.radius}")

    def area(self) -> float:
        return math.pi * self.radius**2

    def scaled(self, factor: float) -> "Disk":
        """Same center, radius multiplied by ``factor``."""
        return Disk(self.center, self.radius * factor)


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    # shoelace on coordinates shifted to the first vertex for conditioning
    x = x - x[0]
    y = y - y[0]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True, eq=False)
class SimplePolygon:
    """Simple polygon with counterclockwise vertices, closed implicitly.

    Clockwise input is reversed. A polygon whose vertices are all collinear
    raises :class:`GeometryError`.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise GeometryError("a polygon needs at least 3 vertices given as (x, y) pairs")
        if not np.all(np.isfinite(v)):
            raise GeometryError("polygon coordinates must be finite")
        scale = float(np.ptp(v, axis=0).max())
        # drop repeated consecutive vertices (including a repeated closing vertex)
        gap = np.abs(v - np.roll(v, 1, axis=0)).max(axis=1)
        v = v[gap > REL_TOL * scale]
        if v.shape[0] < 3:
            raise GeometryError("polygon has fewer than 3 distinct vertices")
        a = _signed_area(v)
        if abs(a) <= REL_TOL * scale**2:
            raise GeometryError("degenerate polygon (zero area)")
        if a < 0:
            v = v[::-1].copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @cached_property
    def centroid(self) -> Point:
        v = self.vertices
        o = v[0]
        w = v - o
        nxt = np.roll(w, -1, axis=0)
        cross = w[:, 0] * nxt[:, 1] - nxt[:, 0] * w[:, 1]
        a = 0.5 * cross.sum()
        cx = ((w[:, 0] + nxt[:, 0]) * cross).sum() / (6 * a)
        cy = ((w[:, 1] + nxt[:, 1]) * cross).sum() / (6 * a)
        return Point(cx + o[0], cy + o[1])

    def is_simple(self) -> bool:
        """True when no two non-adjacent edges intersect. O(n^2) memory."""
        v = self.vertices
        n = len(v)
        if n == 3:
            return True
        a = v
        b = np.roll(v, -1, axis=0)
        i, j = np.triu_indices(n, k=2)
        # edges 0 and n-1 are adjacent
        ok = ~((i == 0) & (j == n - 1))
        i, j = i[ok], j[ok]
        p, r = a[i], b[i] - a[i]
        q, s = a[j], b[j] - a[j]
        rxs = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
        qp = q - p
        t_num = qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]
        u_num = qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]
        nz = np.abs(rxs) > 0
        t = np.where(nz, t_num / np.where(nz, rxs, 1), -1)
        u = np.where(nz, u_num / np.where(nz, rxs, 1), -1)
        hit = nz & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1)
        # collinear overlapping edges
        col = ~nz & (np.abs(t_num) == 0)
        if np.any(col):
            rr = np.einsum("ij,ij->i", r[col], r[col])
            t0 = np.einsum("ij,ij->i", qp[col], r[col]) / rr
            t1 = t0 + np.einsum("ij,ij->i", s[col], r[col]) / rr
            lo, hi = np.minimum(t0, t1), np.maximum(t0, t1)
            if np.any((hi >= 0) & (lo <= 1)):
                return False
        return not bool(np.any(hit))


@dataclass(frozen=True, eq=False)
class Region:
    """Finite union of simple polygons with pairwise disjoint interiors."""

    components: tuple[SimplePolygon, ...] = field(default_factory=tuple)

    def __post_init__(self):
        comps = tuple(c if isinstance(c, SimplePolygon) else SimplePolygon(c) for c in self.components)
        if not comps:
            raise GeometryError("a region needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_polygon(cls, vertices) -> "Region":
        return cls((SimplePolygon(vertices),))

    @cached_property
    def area(self) -> float:
        return math.fsum(c.area for c in self.components)

    @cached_property
    def centroid(self) -> Point:
        a = np.array([c.area for c in self.components])
        cs = np.array([c.centroid for c in self.components])
        return Point(*(cs * a[:, None]).sum(axis=0) / a.sum())

    @cached_property
    def all_vertices(self) -> np.ndarray:
        return np.concatenate([c.vertices for c in self.components])

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        v = self.all_vertices
        lo, hi = v.min(axis=0), v.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @cached_property
    def diameter(self) -> float:
        """Largest distance between two points of the region."""
        v = self.all_vertices
        if len(v) > 8:
            from scipy.spatial import ConvexHull

            try:
                v = v[ConvexHull(v).vertices]
            except Exception:  # qhull rejects flat input; fall back to all vertices
                pass
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d**2).sum(axis=-1)).max())

    def translated(self, dx: float, dy: float) -> "Region":
        off = np.array([dx, dy])
        return Region(tuple(SimplePolygon(c.vertices + off) for c in self.components))

    def scaled(self, factor: float, origin=(0.0, 0.0)) -> "Region":
        o = np.asarray(origin, dtype=float)
        return Region(tuple(SimplePolygon((c.vertices - o) * factor + o) for c in self.components))

    def rotated(self, angle: float, origin=(0.0, 0.0)) -> "Region":
        o = np.asarray(origin, dtype=float)
        rot = rotation_matrix(angle)
        return Region(tuple(SimplePolygon((c.vertices - o) @ rot.T + o) for c in self.components))

    def contains(self, pts: np.ndarray) -> np.ndarray:
        """Even-odd point membership for an (m, 2) array of points."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        inside = np.zeros(len(pts), dtype=bool)
        for c in self.components:
            inside ^= _points_in_polygon(pts, c.vertices)
        return inside


def rotation_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def regular_polygon(n: int, *, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> SimplePolygon:
    """Regular n-gon inscribed in a circle of the given radius."""
    t = phase + 2 * np.pi * np.arange(n) / n
    return SimplePolygon(np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)]))


def disk_polygon(disk: Disk, n: int = DEFAULT_DISK_VERTICES, *, equal_area: bool = True, phase: float = 0.0) -> SimplePolygon:
    """Polygonal approximation of a disk.

    With ``equal_area`` the circumradius is inflated so the n-gon has exactly
    the disk's area; otherwise the vertices lie on the circle. In both cases
    the area error relative to the disk is at most pi r^2 * 2 pi^2 / n^2.
    """
    r = disk.radius
    if equal_area:
        r *= math.sqrt(2 * math.pi / (n * math.sin(2 * math.pi / n)))
    return regular_polygon(n, radius=r, center=disk.center, phase=phase)


def polygon_area(p) -> float:
    """Shoelace signed area (positive for counterclockwise input).

    Accepts a :class:`SimplePolygon` or a raw sequence of vertices; raw input
    keeps its orientation so clockwise lists come back negative.
    """
    if isinstance(p, SimplePolygon):
        return p.area
    v = np.asarray(p, dtype=float)
    if v.ndim != 2 or v.shape[0] < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    a = _signed_area(v)
    scale = float(np.ptp(v, axis=0).max())
    if abs(a) <= REL_TOL * scale**2:
        raise GeometryError("degenerate polygon (zero area)")
    return a


def lens_area(r1: float, r2: float, d: float) -> float:
    """Area of the intersection of two disks with radii r1, r2 at distance d."""
    if r1 <= 0 or r2 <= 0 or d < 0:
        raise GeometryError("lens_area needs r1, r2 > 0 and d >= 0")
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return math.pi * min(r1, r2) ** 2
    a1 = (d * d + r1 * r1 - r2 * r2) / (2 * d * r1)
    a2 = (d * d + r2 * r2 - r1 * r1) / (2 * d * r2)
    # sqrt argument is a product of four nonnegative factors
    k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)
    return (
        r1 * r1 * math.acos(min(1.0, max(-1.0, a1)))
        + r2 * r2 * math.acos(min(1.0, max(-1.0, a2)))
        - 0.5 * math.sqrt(max(k, 0.0))
    )


@njit(cache=True)
def _circle_chain_area(centers: np.ndarray, radius: float, verts: np.ndarray) -> np.ndarray:
    """Signed area of disk(center, radius) intersected with a closed polygon.

    ``centers`` is (m, 2); returns (m,). Each directed edge a->b contributes
    the signed area of disk ∩ triangle(center, a, b): the part of the edge
    inside the circle spans a straight triangle, the parts outside span
    circular sectors.
    """
    m = centers.shape[0]
    n = verts.shape[0]
    r2 = radius * radius
    out = np.zeros(m)
    for k in range(m):
        cx = centers[k, 0]
        cy = centers[k, 1]
        total = 0.0
        for i in range(n):
            j = i + 1 if i + 1 < n else 0
            ax = verts[i, 0] - cx
            ay = verts[i, 1] - cy
            bx = verts[j, 0] - cx
            by = verts[j, 1] - cy
            ex = bx - ax
            ey = by - ay
            A = ex * ex + ey * ey
            if A == 0.0:
                continue
            B = 2.0 * (ax * ex + ay * ey)
            C = ax * ax + ay * ay - r2
            disc = B * B - 4.0 * A * C
            if disc <= 0.0:
                t1 = 0.0
                t2 = 0.0
            else:
                sq = math.sqrt(disc)
                t1 = min(1.0, max(0.0, (-B - sq) / (2.0 * A)))
                t2 = min(1.0, max(0.0, (-B + sq) / (2.0 * A)))
            p1x = ax + t1 * ex
            p1y = ay + t1 * ey
            p2x = ax + t2 * ex
            p2y = ay + t2 * ey
            total += 0.5 * r2 * math.atan2(ax * p1y - ay * p1x, ax * p1x + ay * p1y)
            total += 0.5 * (p1x * p2y - p1y * p2x)
            total += 0.5 * r2 * math.atan2(p2x * by - p2y * bx, p2x * bx + p2y * by)
        out[k] = total
    return out


def intersection_area_many(centers, radius: float, region: Region) -> np.ndarray:
    """Exact |B(c, radius) ∩ region| for every row c of ``centers``."""
    centers = np.ascontiguousarray(np.atleast_2d(np.asarray(centers, dtype=float)))
    out = np.zeros(len(centers))
    for comp in region.components:
        out += _circle_chain_area(centers, radius, comp.vertices)
    return np.clip(out, 0.0, min(math.pi * radius * radius, region.area))


def disk_polygon_intersection_area(b: Disk, r: Region) -> float:
    """Exact area of a disk intersected with a polygonal region."""
    return float(intersection_area_many(np.array([b.center]), b.radius, r)[0])


def symmetric_difference_area(b: Disk, r: Region) -> float:
    """|b △ r| = |b| + |r| - 2|b ∩ r|."""
    return max(0.0, b.area() + r.area - 2.0 * disk_polygon_intersection_area(b, r))


# ----------------------------------------------------------------------------
# Monte Carlo oracles


class Estimate(NamedTuple):
    value: float
    stderr: float


def _points_in_polygon(pts: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Even-odd crossing test. Points exactly on an edge may land either way."""
    x, y = pts[:, 0:1], pts[:, 1:2]
    x0, y0 = v[None, :, 0], v[None, :, 1]
    nv = np.roll(v, -1, axis=0)
    x1, y1 = nv[None, :, 0], nv[None, :, 1]
    straddle = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    crossings = straddle & (x < xint)
    return (crossings.sum(axis=1) % 2).astype(bool)


def _chunks(total: int, size: int) -> Iterable[int]:
    while total > 0:
        k = min(size, total)
        yield k
        total -= k


def _box_estimate(box, indicator, samples: int, seed: int, chunk: int) -> Estimate:
    x0, y0, x1, y1 = box
    box_area = (x1 - x0) * (y1 - y0)
    n_chunks = max(1, -(-samples // chunk))
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    hits = 0
    for k, ss in zip(_chunks(samples, chunk), streams):
        rng = np.random.default_rng(ss)
        pts = rng.uniform((x0, y0), (x1, y1), size=(k, 2))
        hits += int(np.count_nonzero(indicator(pts)))
    p = hits / samples
    return Estimate(box_area * p, box_area * math.sqrt(p * (1 - p) / samples))


def monte_carlo_lens_area(r1: float, r2: float, d: float, *, samples: int = 10_000_000, seed: int = 0) -> Estimate:
    """Rejection-sampling estimate of a lens area over the overlap of both disks' boxes."""
    c1 = np.array([0.0, 0.0])
    c2 = np.array([d, 0.0])
    h = min(r1, r2)
    x0, x1 = max(-r1, d - r2), min(r1, d + r2)
    if x1 <= x0:
        return Estimate(0.0, 0.0)
    box = (x0, -h, x1, h)

    def inside(p):
        return (((p - c1) ** 2).sum(1) <= r1 * r1) & (((p - c2) ** 2).sum(1) <= r2 * r2)

    return _box_estimate(box, inside, samples, seed, 1_000_000)


def monte_carlo_intersection_area(b: Disk, r: Region, *, samples: int = 10_000_000, seed: int = 0) -> Estimate:
    """Estimate |b ∩ r| by sampling the disk's bounding box."""
    cx, cy = b.center
    box = (cx - b.radius, cy - b.radius, cx + b.radius, cy + b.radius)
    c = np.array(b.center)
    rr = b.radius**2
    nv = len(r.all_vertices)
    chunk = max(1000, 4_000_000 // max(nv, 1))

    def inside(p):
        return (((p - c) ** 2).sum(1) <= rr) & r.contains(p)

    return _box_estimate(box, inside, samples, seed, chunk)


def dilated_union_area(disks: Sequence[Disk], delta: float, rng_seed: int = 0, *, samples: int = 10_000_000) -> Estimate:
    """Monte Carlo area of {x : dist(x, union of disks) <= delta}.

    The box is the tight bounding box of the dilated disks. Sample chunks use
    independent substreams spawned from ``rng_seed``, so the result depends
    only on the seed and the sample count.
    """
    if not disks:
        raise GeometryError("dilated_union_area needs at least one disk")
    if delta < 0:
        raise GeometryError("delta must be nonnegative")
    c = np.array([d.center for d in disks])
    rad = np.array([d.radius for d in disks]) + delta
    box = (
        float((c[:, 0] - rad).min()),
        float((c[:, 1] - rad).min()),
        float((c[:, 0] + rad).max()),
        float((c[:, 1] + rad).max()),
    )
    chunk = max(1000, 2_000_000 // len(disks))

    def inside(p):
        d2 = ((p[:, None, :] - c[None, :, :]) ** 2).sum(-1)
        return np.any(d2 <= rad[None, :] ** 2, axis=1)

    return _box_estimate(box, inside, samples, rng_seed, chunk)
