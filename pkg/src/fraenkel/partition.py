"""Partitions of a planar domain and the asymmetry + size-deviation functional.

For a partition Omega = U Omega_i the functional is

    sum_i w_i A(Omega_i) + sum_i w_i D(Omega_i),   w_i = |Omega_i| / |Omega|,

with A the Fraenkel asymmetry and D(Omega_i) = (|Omega_i| - min_j |Omega_j|) / |Omega_i|.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .asymmetry import AsymmetryOptions, AsymmetryResult, fraenkel_asymmetry
from .geometry import REL_TOL, Disk, GeometryError, Point, Region

# Lighter optimizer budget for per-cell work; partitions hold hundreds of cells.
CELL_OPTIONS = AsymmetryOptions(grid=3, n_local=1, max_evals=300)


class PartitionError(ValueError):
    """The cells do not form a valid partition of the domain."""


@dataclass(frozen=True)
class ValidationReport:
    samples: int
    max_pair_overlap: float  # largest estimated pairwise overlap / smaller cell area
    outside_fraction: float  # estimated cell area outside the domain / domain area
    coverage: float  # sum of cell areas / domain area
    ok: bool


@dataclass(frozen=True, eq=False)
class Partition:
    domain: Region
    cells: tuple[Region, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def cell_areas(self) -> np.ndarray:
        a = np.array([c.area for c in self.cells], dtype=float)
        a.setflags(write=False)
        return a

    def transformed(self, fn) -> "Partition":
        """Apply a Region -> Region map to the domain and every cell."""
        return Partition(fn(self.domain), tuple(fn(c) for c in self.cells))

    def validate(self, samples: int = 20_000, seed: int = 0, *, raise_on_error: bool = True) -> ValidationReport:
        """Check the partition invariants.

        Exact: every cell has positive area and the cell areas sum to at most
        |domain| (1 + 1e-6). Statistical: ``samples`` uniform points in the
        domain's bounding box are tested against every cell whose bounding
        box contains them; any pair overlap above 1e-6 of the smaller cell
        area, or any cell mass outside the domain above 1e-6 |domain|, fails.
        Shared edges have measure zero and never trigger a failure.
        """
        if not self.cells:
            raise PartitionError("partition has no cells")
        dom_area = self.domain.area
        areas = self.cell_areas
        total = math.fsum(areas)
        problems = []
        if np.any(areas <= 0):
            problems.append("a cell has nonpositive area")
        if total > dom_area * (1 + 1e-6):
            problems.append(f"cell areas sum to {total!r} > domain area {dom_area!r}")

        x0, y0, x1, y1 = self.domain.bbox
        for c in self.cells:
            cx0, cy0, cx1, cy1 = c.bbox
            x0, y0, x1, y1 = min(x0, cx0), min(y0, cy0), max(x1, cx1), max(y1, cy1)
        box_area = (x1 - x0) * (y1 - y0)
        rng = np.random.default_rng(seed)
        pts = rng.uniform((x0, y0), (x1, y1), size=(samples, 2))
        order = np.argsort(pts[:, 0], kind="stable")
        pts = pts[order]
        xs = pts[:, 0]
        owner = np.full(samples, -1)
        pair_hits: dict[tuple[int, int], int] = {}
        covered = np.zeros(samples, dtype=bool)
        for i, c in enumerate(self.cells):
            cx0, cy0, cx1, cy1 = c.bbox
            lo = int(np.searchsorted(xs, cx0, side="left"))
            hi = int(np.searchsorted(xs, cx1, side="right"))
            idx = np.arange(lo, hi)
            sel = idx[(pts[idx, 1] >= cy0) & (pts[idx, 1] <= cy1)]
            if sel.size == 0:
                continue
            inside = sel[c.contains(pts[sel])]
            prev = owner[inside]
            for j in prev[prev >= 0]:
                key = (int(j), i)
                pair_hits[key] = pair_hits.get(key, 0) + 1
            owner[inside] = i
            covered[inside] = True
        max_overlap = 0.0
        for (i, j), n in pair_hits.items():
            est = box_area * n / samples
            max_overlap = max(max_overlap, est / min(areas[i], areas[j]))
        in_dom = self.domain.contains(pts[covered]) if covered.any() else np.zeros(0, bool)
        outside = box_area * float(np.count_nonzero(~in_dom)) / samples / dom_area
        if max_overlap > 1e-6:
            problems.append(f"cells overlap (estimated overlap fraction {max_overlap:.3g})")
        if outside > 1e-6:
            problems.append(f"cells extend outside the domain (estimated fraction {outside:.3g})")
        report = ValidationReport(samples, max_overlap, outside, total / dom_area, not problems)
        if problems and raise_on_error:
            raise PartitionError("; ".join(problems))
        return report

    def interior_mask(self) -> np.ndarray:
        """Cells whose bounding box stays at least one cell diameter away from the domain boundary."""
        edges = [(c.vertices, np.roll(c.vertices, -1, axis=0)) for c in self.domain.components]
        a = np.concatenate([e[0] for e in edges])
        b = np.concatenate([e[1] for e in edges])
        mask = np.zeros(len(self.cells), dtype=bool)
        for i, c in enumerate(self.cells):
            x0, y0, x1, y1 = c.bbox
            corners = np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
            if not self.domain.contains(corners).all():
                continue
            mask[i] = _point_segment_distance(corners, a, b).min() >= c.diameter
        return mask


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(m, k) distances from m points to k segments a->b."""
    ab = b - a
    ap = p[:, None, :] - a[None, :, :]
    t = np.clip((ap * ab).sum(-1) / (ab * ab).sum(-1), 0.0, 1.0)
    d = ap - t[..., None] * ab
    return np.sqrt((d * d).sum(-1))


def deviation(cell_area: float, min_area: float) -> float:
    """(cell_area - min_area) / cell_area.

    Areas equal to within the 1e-12 relative predicate tolerance give 0.
    """
    if not (0 < min_area):
        raise ValueError("min_area must be positive")
    if cell_area < min_area * (1 - REL_TOL):
        raise ValueError(f"cell area {cell_area!r} is below the minimum {min_area!r}")
    diff = cell_area - min_area
    if diff <= REL_TOL * cell_area:
        return 0.0
    return diff / cell_area


@dataclass(frozen=True)
class CellRow:
    cell_id: int
    area: float
    asymmetry: float
    deviation: float
    disk: Disk


@dataclass(frozen=True)
class PartitionStats:
    n_cells: int
    min_area: float
    eta0: float
    d_sum: float
    a_sum: float
    functional: float
    total_area: float
    weights: tuple[float, ...]


@dataclass(frozen=True)
class FunctionalReport:
    stats: PartitionStats
    per_cell: tuple[CellRow, ...]


def aggregate(rows: Sequence[CellRow], total_area: float) -> PartitionStats:
    """Weighted sums over the rows; correctly rounded so recomputation is bitwise stable."""
    if not rows:
        raise PartitionError("no cells to aggregate")
    w = tuple(r.area / total_area for r in rows)
    d_sum = math.fsum(wi * r.deviation for wi, r in zip(w, rows))
    a_sum = math.fsum(wi * r.asymmetry for wi, r in zip(w, rows))
    m = min(r.area for r in rows)
    return PartitionStats(
        n_cells=len(rows),
        min_area=m,
        eta0=math.sqrt(m / math.pi),
        d_sum=d_sum,
        a_sum=a_sum,
        functional=a_sum + d_sum,
        total_area=total_area,
        weights=w,
    )


def _shape_key(r: Region) -> bytes:
    # translation-invariant fingerprint of a cell's vertex lists
    c = np.array(r.centroid)
    scale = math.sqrt(r.area)
    parts = [np.round((p.vertices - c) / scale, 10).tobytes() for p in r.components]
    return b"|".join(parts)


def _asym_worker(args):
    cell, opts = args
    return fraenkel_asymmetry(cell, opts)


def cell_asymmetries(
    cells: Sequence[Region], opts: AsymmetryOptions | None = None, workers: int = 1
) -> list[AsymmetryResult]:
    """Fraenkel asymmetry of each cell, in order.

    Cells that are translates of an earlier cell reuse its optimum (shifted).
    """
    opts = opts or CELL_OPTIONS
    keys = [_shape_key(c) for c in cells]
    first: dict[bytes, int] = {}
    todo = []
    for i, k in enumerate(keys):
        if k not in first:
            first[k] = i
            todo.append(i)
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            solved = list(ex.map(_asym_worker, [(cells[i], opts) for i in todo], chunksize=8))
    else:
        solved = [fraenkel_asymmetry(cells[i], opts) for i in todo]
    by_index = dict(zip(todo, solved))
    out = []
    for i, k in enumerate(keys):
        j = first[k]
        res = by_index[j]
        if j != i:
            ci, cj = cells[i].centroid, cells[j].centroid
            center = Point(res.center.x + ci.x - cj.x, res.center.y + ci.y - cj.y)
            res = AsymmetryResult(res.value, center, math.sqrt(cells[i].area / math.pi), 0, res.converged)
        out.append(res)
    return out


def evaluate_functional(
    p: Partition,
    opts: AsymmetryOptions | None = None,
    *,
    interior_only: bool = False,
    workers: int = 1,
) -> FunctionalReport:
    """Per-cell asymmetry and deviation plus the weighted sums.

    With ``interior_only`` the boundary cells (see
    :meth:`Partition.interior_mask`) are dropped and the weights, the minimum
    area and eta0 refer to the interior cells alone.
    """
    if not p.cells:
        raise PartitionError("partition has no cells")
    idx = np.flatnonzero(p.interior_mask()) if interior_only else np.arange(len(p.cells))
    if idx.size == 0:
        raise PartitionError("no interior cells")
    cells = [p.cells[i] for i in idx]
    areas = [float(p.cell_areas[i]) for i in idx]
    total = math.fsum(areas) if interior_only else p.domain.area
    m = min(areas)
    asym = cell_asymmetries(cells, opts, workers)
    rows = tuple(
        CellRow(int(i), a, res.value, deviation(a, m), res.optimal_disk) for i, a, res in zip(idx, areas, asym)
    )
    return FunctionalReport(aggregate(rows, total), rows)


# ----------------------------------------------------------------------------
# lemma checkers


@dataclass(frozen=True)
class BigSetReport:
    c1: float
    d2: float
    big_measure: float  # normalized to |domain| = 1
    bound: float  # d2 / c1 + d2
    holds: bool

    @property
    def slack(self) -> float:
        return self.bound - self.big_measure


def check_big_set_lemma(p: Partition, c1: float) -> BigSetReport:
    """Measure of cells with area > (1 + c1) pi eta0^2 against d2 / c1 + d2.

    d2 is the partition's own deviation sum, so the check needs no asymmetry
    computations.
    """
    if not c1 > 0:
        raise ValueError("c1 must be positive")
    areas = p.cell_areas
    total = p.domain.area
    m = float(areas.min())
    d2 = math.fsum((a / total) * deviation(a, m) for a in areas)
    big = math.fsum(a for a in areas if a > (1 + c1) * m) / total
    bound = d2 / c1 + d2
    return BigSetReport(c1, d2, big, bound, big <= bound + 1e-12)


@dataclass(frozen=True)
class MassLemmaReport:
    c: float
    a_sum: float
    applicable: bool
    qualifying_measure: Optional[float]  # |U {A(cell) >= c/6}| / |domain|
    bound: float  # c / 6
    holds: Optional[bool]


def asymmetry_mass_lemma_check(
    p: Partition,
    c: float,
    report: FunctionalReport | None = None,
    opts: AsymmetryOptions | None = None,
) -> MassLemmaReport:
    """If the weighted asymmetry sum is at least c/2, cells with asymmetry >= c/6 cover >= c/6 of the domain.

    Pass a precomputed full (not interior-only) report to avoid recomputing
    the cell asymmetries.
    """
    report = report or evaluate_functional(p, opts)
    a_sum = report.stats.a_sum
    bound = c / 6
    if a_sum < c / 2:
        return MassLemmaReport(c, a_sum, False, None, bound, None)
    q = math.fsum(r.area for r in report.per_cell if r.asymmetry >= c / 6) / report.stats.total_area
    return MassLemmaReport(c, a_sum, True, q, bound, q >= bound)
