"""Fraenkel asymmetry and its generalization to convex bodies.

The objective is evaluated exactly (see :mod:`fraenkel.geometry`) and
minimized by a multistart search: all starts are scored in one vectorized
pass, the best few are refined with Nelder-Mead, and a final short
Nelder-Mead pass from the incumbent decides the convergence flag.

Every computation runs in a normalized frame where the region has its
centroid at the origin and area pi (so the comparison disk has radius 1).
This makes the reported values translation and scale invariant up to
rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

from .geometry import (
    Disk,
    GeometryError,
    Point,
    Region,
    SimplePolygon,
    _signed_area,
    intersection_area_many,
    rotation_matrix,
)


@dataclass(frozen=True)
class AsymmetryOptions:
    """Optimizer budget.

    ``grid`` k gives k*k bounding-box starts plus the centroid, capped at
    ``max_starts``. ``n_local`` of them (the best scoring, mutually distinct)
    get a Nelder-Mead run of at most ``max_evals`` evaluations. ``tol`` is
    relative to the region diameter.
    """

    grid: int = 5
    max_starts: int = 64
    max_evals: int = 500
    n_local: int = 3
    tol: float = 1e-6
    angle_starts: int = 8


@dataclass(frozen=True)
class AsymmetryResult:
    value: float
    center: Point
    radius: float
    evaluations: int
    converged: bool
    # rotation of the template for the generalized asymmetry, None for disks
    angle: Optional[float] = None
    # best value after screening, local search and polishing
    stage_values: tuple[float, ...] = field(default=(), compare=False)

    @property
    def optimal_disk(self) -> Disk:
        return Disk(self.center, self.radius)


def _normalize(r: Region) -> tuple[Region, np.ndarray, float]:
    area = r.area
    if not area > 0:
        raise GeometryError("region has zero area")
    c = np.array(r.centroid)
    s = math.sqrt(math.pi / area)
    comps = tuple(SimplePolygon((p.vertices - c) * s) for p in r.components)
    return Region(comps), c, s


def _starts(rn: Region, opts: AsymmetryOptions) -> np.ndarray:
    x0, y0, x1, y1 = rn.bbox
    k = opts.grid
    g = (np.arange(k) + 0.5) / k
    gx, gy = np.meshgrid(x0 + g * (x1 - x0), y0 + g * (y1 - y0), indexing="ij")
    pts = np.vstack([[0.0, 0.0], np.column_stack([gx.ravel(), gy.ravel()])])
    return pts[: opts.max_starts]


def _pick_distinct(starts: np.ndarray, values: np.ndarray, n: int, sep: float) -> list[int]:
    order = np.argsort(values, kind="stable")
    picked: list[int] = []
    for i in order:
        if all(np.linalg.norm(starts[i] - starts[j]) > sep for j in picked):
            picked.append(int(i))
        if len(picked) == n:
            break
    return picked


def _nelder_mead(f: Callable, x0: np.ndarray, steps: np.ndarray, max_evals: int):
    simplex = np.vstack([x0, x0 + np.diag(steps)])
    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-11, "fatol": 1e-15, "maxfev": max_evals},
    )
    return np.asarray(res.x), float(res.fun), int(res.nfev)


def _multistart(f, batch_f, starts, steps, sep, opts: AsymmetryOptions, scale: float):
    vals = batch_f(starts)
    evals = len(starts)
    i0 = int(np.argmin(vals))
    best_x, best_v = starts[i0].copy(), float(vals[i0])
    stages = [best_v]
    for i in _pick_distinct(starts, vals, opts.n_local, sep):
        x, v, n = _nelder_mead(f, starts[i], steps, opts.max_evals)
        evals += n
        if v < best_v:
            best_x, best_v = x, v
    stages.append(best_v)
    x, v, n = _nelder_mead(f, best_x, steps * 0.05, opts.max_evals)
    evals += n
    moved = float(np.linalg.norm((x - best_x)[:2]))
    if v < best_v:
        best_x, best_v = x, v
    stages.append(best_v)
    converged = moved < opts.tol * scale
    return best_x, best_v, evals, converged, tuple(stages)


def fraenkel_asymmetry(r: Region, opts: AsymmetryOptions | None = None) -> AsymmetryResult:
    """Fraenkel asymmetry inf_B |r △ B| / |r| over disks with |B| = |r|.

    The value is an upper bound on the infimum (a local search cannot
    certify a global minimum). Among equal minimizers the one reached from
    the earliest start wins.
    """
    opts = opts or AsymmetryOptions()
    rn, c0, s = _normalize(r)

    def batch(pts):
        inter = intersection_area_many(pts, 1.0, rn)
        return np.clip(2.0 - 2.0 * inter / math.pi, 0.0, 2.0)

    def f(x):
        return float(batch(x[None, :])[0])

    starts = _starts(rn, opts)
    x, v, evals, conv, stages = _multistart(f, batch, starts, np.array([0.1, 0.1]), 0.05, opts, rn.diameter)
    center = Point(*(c0 + x / s))
    return AsymmetryResult(
        value=v,
        center=center,
        radius=math.sqrt(r.area / math.pi),
        evaluations=evals,
        converged=conv,
        stage_values=stages,
    )


def grid_scan_asymmetry(r: Region, n: int = 200) -> tuple[float, Point]:
    """Exhaustive scan of disk centers on an n x n grid over the bounding box."""
    rn, c0, s = _normalize(r)
    x0, y0, x1, y1 = rn.bbox
    gx, gy = np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n), indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    best = math.inf
    arg = pts[0]
    for chunk in np.array_split(pts, max(1, len(pts) // 4000)):
        v = 2.0 - 2.0 * intersection_area_many(chunk, 1.0, rn) / math.pi
        i = int(np.argmin(v))
        if v[i] < best:
            best, arg = float(v[i]), chunk[i]
    return max(best, 0.0), Point(*(c0 + arg / s))


# ----------------------------------------------------------------------------
# generalized asymmetry


def clip_convex_area(subject: np.ndarray, clip: np.ndarray) -> float:
    """Area of a simple polygon clipped by a convex CCW polygon.

    Sutherland-Hodgman; a disconnected result comes back as one chain with
    zero-width bridges along the clip edges, which does not change its area.
    """
    out = subject
    m = len(clip)
    for i in range(m):
        if len(out) < 3:
            return 0.0
        a, b = clip[i], clip[(i + 1) % m]
        e = b - a
        d = e[0] * (out[:, 1] - a[1]) - e[1] * (out[:, 0] - a[0])
        ins = d >= 0
        if ins.all():
            continue
        nxt = np.roll(out, -1, axis=0)
        dn = np.roll(d, -1)
        ins_n = np.roll(ins, -1)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = d / (d - dn)
            ip = out + t[:, None] * (nxt - out)
        cand = np.stack([ip, nxt], axis=1)
        mask = np.stack([ins != ins_n, ins_n], axis=1)
        out = cand[mask]
    if len(out) < 3:
        return 0.0
    return max(_signed_area(out), 0.0)


def _is_convex(v: np.ndarray, tol: float = 1e-9) -> bool:
    e = np.roll(v, -1, axis=0) - v
    cr = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    scale = float(np.ptp(v, axis=0).max()) ** 2
    return bool(np.all(cr >= -tol * scale))


@dataclass(frozen=True, eq=False)
class BodyTemplate:
    """Unit-area convex reference body K, centered at its centroid."""

    shape: Region
    name: str = "K"

    def __post_init__(self):
        if len(self.shape.components) != 1:
            raise GeometryError("a body template must be a single polygon")
        if abs(self.shape.area - 1.0) > 1e-9:
            raise GeometryError(f"template area must be 1, got {self.shape.area}")
        if not _is_convex(self.vertices):
            raise GeometryError(f"template {self.name!r} is not convex")

    @classmethod
    def from_polygon(cls, vertices, name: str = "K") -> "BodyTemplate":
        """Rescale and recenter an arbitrary convex polygon to a template."""
        p = SimplePolygon(vertices)
        if not _is_convex(p.vertices):
            raise GeometryError(f"template {name!r} is not convex")
        c = np.array(p.centroid)
        v = (p.vertices - c) / math.sqrt(p.area)
        return cls(Region((SimplePolygon(v),)), name)

    @property
    def vertices(self) -> np.ndarray:
        return self.shape.components[0].vertices

    @property
    def symmetry_order(self) -> int:
        """Largest m such that rotating by 2 pi / m maps K onto itself (tol 1e-6)."""
        v = self.vertices
        c = np.array(self.shape.centroid)
        n = len(v)
        for m in range(n, 1, -1):
            if n % m:
                continue
            rv = (v - c) @ rotation_matrix(2 * math.pi / m).T + c
            sym_diff = 2.0 * (1.0 - clip_convex_area(v, rv))
            if sym_diff <= 1e-6:
                return m
        return 1


def _placed(template: BodyTemplate, scale: float, x: float, y: float, theta: float) -> np.ndarray:
    return template.vertices * scale @ rotation_matrix(theta).T + np.array([x, y])


def generalized_asymmetry(r: Region, k: BodyTemplate, opts: AsymmetryOptions | None = None) -> AsymmetryResult:
    """inf over translations x and rotations R of |r △ (R K + x)| / |r|, K scaled to |r|.

    Rotations are searched over one symmetry period [0, 2 pi / m) of K.
    ``radius`` in the result holds the linear scale applied to the unit-area
    template and ``angle`` the rotation.
    """
    if not isinstance(k, BodyTemplate):
        raise TypeError("k must be a BodyTemplate")
    opts = opts or AsymmetryOptions()
    rn, c0, s = _normalize(r)
    kscale = math.sqrt(math.pi)
    period = 2 * math.pi / k.symmetry_order
    comps = [p.vertices for p in rn.components]

    def f(z):
        kv = _placed(k, kscale, z[0], z[1], z[2] % period)
        inter = sum(clip_convex_area(c, kv) for c in comps)
        return min(2.0, max(0.0, 2.0 - 2.0 * inter / math.pi))

    def batch(zs):
        return np.array([f(z) for z in zs])

    xy = _starts(rn, opts)
    angles = period * np.arange(opts.angle_starts) / opts.angle_starts
    starts = np.array([(x, y, a) for x, y in xy for a in angles])
    steps = np.array([0.1, 0.1, period / (2 * opts.angle_starts)])
    z, v, evals, conv, stages = _multistart(f, batch, starts, steps, 0.05, opts, rn.diameter)
    return AsymmetryResult(
        value=v,
        center=Point(*(c0 + z[:2] / s)),
        radius=math.sqrt(r.area),
        evaluations=evals,
        converged=conv,
        angle=float(z[2] % period),
        stage_values=stages,
    )


def grid_scan_generalized(r: Region, k: BodyTemplate, n: int = 41, n_angles: int = 16) -> float:
    """Exhaustive (x, theta) scan of the generalized asymmetry objective."""
    rn, _, _ = _normalize(r)
    kscale = math.sqrt(math.pi)
    period = 2 * math.pi / k.symmetry_order
    x0, y0, x1, y1 = rn.bbox
    comps = [p.vertices for p in rn.components]
    best = math.inf
    for theta in period * np.arange(n_angles) / n_angles:
        for x in np.linspace(x0, x1, n):
            for y in np.linspace(y0, y1, n):
                kv = _placed(k, kscale, x, y, theta)
                inter = sum(clip_convex_area(c, kv) for c in comps)
                best = min(best, 2.0 - 2.0 * inter / math.pi)
    return max(best, 0.0)
