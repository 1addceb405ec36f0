"""Test partitions: hexagonal and square tilings, disk packings, Voronoi cells.

Cells are built on the whole plane (or a neighbourhood of the domain) and then
clipped to the domain with shapely, so boundary cells are kept, possibly as
several components.

Disk packings live on the triangular lattice with spacing 2R. Every lattice
triangle is split into three 60 degree sectors of its corner disks and one
interstitial cell; the sectors reassemble into the disk cells, so disks plus
interstitials tile the plane exactly. In a two-scale packing the sites with
(i - j) % 3 == 0 carry radius ratio * R; that sublattice meets every
triangle in exactly one corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
import shapely
from shapely.geometry import MultiPoint, MultiPolygon, Polygon

from .geometry import Disk, GeometryError, Region, SimplePolygon, intersection_area_many
from .partition import Partition

KINDS = ("hex", "square", "disk_pack", "two_scale", "voronoi")
# Disk cells need a vertex count divisible by 6 so the lattice directions are vertices.
PACK_VERTICES = 1026
SQRT3 = math.sqrt(3.0)
BLIND_RATIO = 0.75


def unit_square() -> Region:
    return Region.from_polygon([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    target_cells: int
    domain: Region = field(default_factory=unit_square)
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.target_cells < 1:
            raise ValueError("target_cells must be at least 1")
        ratio = self.params.get("ratio", 1.0)
        if not 0 < ratio <= 1:
            raise ValueError("radius ratio must lie in (0, 1]")
        if "radius" in self.params and not self.params["radius"] > 0:
            raise ValueError("packing radius must be positive")
        v = self.params.get("vertices", PACK_VERTICES)
        if int(v) != v or v < 6 or v % 6:
            raise ValueError("disk vertex count must be a positive multiple of 6")


def _to_shapely(r: Region):
    polys = [Polygon(c.vertices) for c in r.components]
    return polys[0] if len(polys) == 1 else MultiPolygon(polys)


def _from_shapely(g, min_area: float) -> Region | None:
    if g.is_empty:
        return None
    parts = [g] if isinstance(g, Polygon) else [h for h in getattr(g, "geoms", []) if isinstance(h, Polygon)]
    comps = []
    for h in parts:
        if h.area <= min_area:
            continue
        if len(h.interiors):
            raise GeometryError("clipping produced a polygon with a hole")
        comps.append(SimplePolygon(np.asarray(h.exterior.coords)[:-1]))
    return Region(tuple(comps)) if comps else None


def _clip_cells(raw: Sequence[np.ndarray], domain: Region, typical_area: float) -> list[Region]:
    dom = _to_shapely(domain)
    shapely.prepare(dom)
    cells = []
    # slivers below this size are dropped; they would be degenerate polygons
    min_area = 1e-12 * typical_area
    for v in raw:
        poly = Polygon(v)
        if not dom.intersects(poly):
            continue
        if dom.contains(poly):
            cells.append(Region((SimplePolygon(v),)))
            continue
        r = _from_shapely(dom.intersection(poly), min_area)
        if r is not None:
            cells.append(r)
    return cells


def _hex_raw(domain: Region, area: float) -> list[np.ndarray]:
    s = math.sqrt(2 * area / (3 * SQRT3))  # side of a regular hexagon with this area
    w, h = SQRT3 * s, 1.5 * s
    x0, y0, x1, y1 = domain.bbox
    t = np.pi / 6 + np.pi / 3 * np.arange(6)
    proto = s * np.column_stack([np.cos(t), np.sin(t)])
    raw = []
    rows = int(math.ceil((y1 - y0) / h)) + 2
    cols = int(math.ceil((x1 - x0) / w)) + 2
    for j in range(-1, rows):
        off = 0.5 * w if j % 2 else 0.0
        for i in range(-1, cols):
            raw.append(proto + (x0 + i * w + off, y0 + j * h))
    return raw


def _square_raw(domain: Region, area: float) -> list[np.ndarray]:
    x0, y0, x1, y1 = domain.bbox
    hgt = math.sqrt(area)
    nx = max(1, math.ceil((x1 - x0) / hgt - 1e-9))
    ny = max(1, math.ceil((y1 - y0) / hgt - 1e-9))
    # exact fit when the bounding box is the domain (rectangles)
    hx, hy = (x1 - x0) / nx, (y1 - y0) / ny
    proto = np.array([(0.0, 0.0), (hx, 0.0), (hx, hy), (0.0, hy)])
    return [proto + (x0 + i * hx, y0 + j * hy) for j in range(ny) for i in range(nx)]


def _unit_circle(n: int) -> np.ndarray:
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(t), np.sin(t)])


class _Lattice:
    """Triangular lattice of disk sites covering a box."""

    def __init__(self, box, big_radius: float, ratio: float, n: int = PACK_VERTICES):
        if n % 6:
            raise ValueError("disk vertex count must be divisible by 6")
        self.R = big_radius
        self.ratio = ratio
        self.n = n
        self.unit = _unit_circle(n)
        x0, y0, x1, y1 = box
        self.origin = np.array([x0, y0])
        pad = 2
        jmax = int(math.ceil((y1 - y0) / (SQRT3 * big_radius))) + pad
        imax = int(math.ceil((x1 - x0) / (2 * big_radius))) + pad
        self.j_range = range(-pad, jmax + 1)
        # i shifts with j so the sites fill the box rather than a rhombus
        self.i_ranges = {j: range(-pad - (j + 1) // 2, imax - j // 2 + 1) for j in self.j_range}

    def center(self, i: int, j: int) -> np.ndarray:
        return self.origin + (2 * self.R * i + self.R * j, SQRT3 * self.R * j)

    def radius(self, i: int, j: int) -> float:
        return self.R * self.ratio if (i - j) % 3 == 0 else self.R

    def sites(self):
        for j in self.j_range:
            for i in self.i_ranges[j]:
                yield i, j

    def disk_vertices(self, i: int, j: int) -> np.ndarray:
        return self.center(i, j) + self.radius(i, j) * self.unit

    def disks(self) -> list[Disk]:
        return [Disk(tuple(self.center(i, j)), self.radius(i, j)) for i, j in self.sites()]

    def _direction_index(self, frm, to) -> int:
        d = self.center(*to) - self.center(*frm)
        ang = math.atan2(d[1], d[0]) % (2 * math.pi)
        return int(round(ang / (2 * math.pi) * self.n)) % self.n

    def interstitial(self, tri) -> np.ndarray:
        """Lattice triangle (CCW sites) minus the three corner sectors."""
        pts = []
        for k in range(3):
            u, v, w = tri[k - 1], tri[k], tri[(k + 1) % 3]
            start = self._direction_index(v, u)
            stop = self._direction_index(v, w)
            steps = (start - stop) % self.n  # clockwise around v
            idx = (start - np.arange(steps + 1)) % self.n
            pts.append(self.disk_vertices(*v)[idx])
        poly = np.concatenate(pts)
        # merge the near-coincident tangency points of touching disks
        gap = np.linalg.norm(poly - np.roll(poly, 1, axis=0), axis=1)
        return poly[gap > 1e-9 * self.R]

    def triangles(self):
        for i, j in self.sites():
            if (i + 1) in self.i_ranges.get(j, ()) and i in self.i_ranges.get(j + 1, ()):
                yield ((i, j), (i + 1, j), (i, j + 1))
            if (i + 1) in self.i_ranges.get(j + 1, ()) and i in self.i_ranges.get(j + 1, ()):
                yield ((i + 1, j), (i + 1, j + 1), (i, j + 1))


def _pack_radius(area: float, target: int) -> float:
    # one disk and two interstitials per lattice cell of area 2 sqrt(3) R^2
    return math.sqrt(SQRT3 * area / (2 * target))


def _lattice_for(spec: GeneratorSpec) -> _Lattice:
    ratio = 1.0 if spec.kind == "disk_pack" else float(spec.params.get("ratio", 1.0))
    R = float(spec.params.get("radius", 0.0)) or _pack_radius(spec.domain.area, spec.target_cells)
    n = int(spec.params.get("vertices", PACK_VERTICES))
    return _Lattice(spec.domain.bbox, R, ratio, n)


def _pack_raw(spec: GeneratorSpec) -> tuple[list[np.ndarray], float]:
    lat = _lattice_for(spec)
    x0, y0, x1, y1 = spec.domain.bbox
    raw = []
    for i, j in lat.sites():
        c = lat.center(i, j)
        r = lat.radius(i, j)
        if c[0] + r < x0 or c[0] - r > x1 or c[1] + r < y0 or c[1] - r > y1:
            continue
        raw.append(lat.disk_vertices(i, j))
    for tri in lat.triangles():
        cs = np.array([lat.center(*t) for t in tri])
        if cs[:, 0].max() < x0 or cs[:, 0].min() > x1 or cs[:, 1].max() < y0 or cs[:, 1].min() > y1:
            continue
        raw.append(lat.interstitial(tri))
    return raw, lat.R**2


def _voronoi_cells(spec: GeneratorSpec) -> list[Region]:
    rng = np.random.default_rng(spec.seed)
    dom = _to_shapely(spec.domain)
    shapely.prepare(dom)
    n = max(2, int(rng.poisson(spec.target_cells)))
    x0, y0, x1, y1 = spec.domain.bbox
    pts = np.empty((0, 2))
    while len(pts) < n:
        cand = rng.uniform((x0, y0), (x1, y1), size=(2 * n, 2))
        ok = shapely.contains_xy(dom, cand[:, 0], cand[:, 1])
        pts = np.vstack([pts, cand[ok]])
    pts = pts[:n]
    vor = shapely.voronoi_polygons(MultiPoint(pts), extend_to=dom, ordered=True)
    typical = spec.domain.area / n
    cells = []
    for g in vor.geoms:
        r = _from_shapely(dom.intersection(g), 1e-12 * typical)
        if r is not None:
            cells.append(r)
    return cells


def generate(spec: GeneratorSpec) -> Partition:
    """Build the partition described by ``spec``."""
    area = spec.domain.area / spec.target_cells
    if spec.kind == "hex":
        cells = _clip_cells(_hex_raw(spec.domain, area), spec.domain, area)
    elif spec.kind == "square":
        cells = _clip_cells(_square_raw(spec.domain, area), spec.domain, area)
    elif spec.kind in ("disk_pack", "two_scale"):
        raw, typical = _pack_raw(spec)
        cells = _clip_cells(raw, spec.domain, typical)
    else:
        cells = _voronoi_cells(spec)
    if not cells:
        raise ValueError(f"no cells of kind {spec.kind!r} fit the domain")
    return Partition(spec.domain, tuple(cells))


def packing_disks(spec: GeneratorSpec) -> list[Disk]:
    """Exact disks of a disk_pack / two_scale spec that meet the domain's bounding box."""
    if spec.kind not in ("disk_pack", "two_scale"):
        raise ValueError("only disk_pack and two_scale specs define a packing")
    lat = _lattice_for(spec)
    x0, y0, x1, y1 = spec.domain.bbox
    out = []
    for d in lat.disks():
        (cx, cy), r = d.center, d.radius
        if cx + r > x0 and cx - r < x1 and cy + r > y0 and cy - r < y1:
            out.append(d)
    return out


def lattice_disks(kind: str, radius: float, window: Region) -> list[Disk]:
    """Equal tangent disks on a hexagonal or square lattice, covering ``window``."""
    x0, y0, x1, y1 = window.bbox
    if kind == "hex":
        lat = _Lattice((x0, y0, x1, y1), radius, 1.0, 6)
        disks = lat.disks()
    elif kind == "square":
        nx = int(math.ceil((x1 - x0) / (2 * radius))) + 2
        ny = int(math.ceil((y1 - y0) / (2 * radius))) + 2
        disks = [Disk((x0 + 2 * radius * i, y0 + 2 * radius * j), radius) for i in range(-1, nx) for j in range(-1, ny)]
    else:
        raise ValueError(f"unknown lattice {kind!r}")
    return [
        d
        for d in disks
        if d.center.x + d.radius > x0 and d.center.x - d.radius < x1 and d.center.y + d.radius > y0 and d.center.y - d.radius < y1
    ]


def packing_density(disks: Sequence[Disk], window: Region) -> float:
    """Sum of |disk ∩ window| over |window|, for pairwise disjoint disks."""
    if not window.area > 0:
        raise GeometryError("window must have positive area")
    if not disks:
        return 0.0
    from scipy.spatial import cKDTree

    c = np.array([d.center for d in disks])
    r = np.array([d.radius for d in disks])
    pairs = cKDTree(c).query_pairs(2 * r.max(), output_type="ndarray")
    if len(pairs):
        i, j = pairs[:, 0], pairs[:, 1]
        dist = np.linalg.norm(c[i] - c[j], axis=1)
        bad = dist < (r[i] + r[j]) * (1 - 1e-12)
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise GeometryError(f"disks {int(i[k])} and {int(j[k])} overlap")
    total = 0.0
    for rad in np.unique(r):
        sel = c[r == rad]
        total += float(intersection_area_many(sel, float(rad), window).sum())
    return total / window.area
