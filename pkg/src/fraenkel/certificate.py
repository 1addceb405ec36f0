"""The two-dimensional contradiction argument as executable arithmetic.

Assume the weighted asymmetry sum is at most d1 and the weighted deviation sum
at most d2 (domain normalized to unit area). After removing the dilated big
cells and the dilated strongly overlapping small disks, the surviving disks
shrink by (1 - c2) into a packing with radius ratios >= 3/4, whose density
cannot exceed pi / sqrt(12). The argument yields a contradiction when

    (1 - c2)^2 [1 - (9 d2 / c1 + 9 d2 + (128 pi / 37) (1 + c1) / c2^(3/2) d1)] > pi / sqrt(12)

for every split d1 + d2 = c.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .geometry import Disk, GeometryError, lens_area

log = logging.getLogger(__name__)

BLIND_DENSITY = math.pi / math.sqrt(12.0)
# lens bound coefficient and the largest overlap threshold it is valid for
LENS_COEFF = 3.7
C2_MAX = 0.05
# rounded constants of the argument: 9 for big cells, 32/5 for overlapping pairs
BIG_AMPLIFICATION = 9.0
PAIR_AMPLIFICATION = 32.0 / 5.0
PAPER_C1 = 1.0 / 250.0
PAPER_C2 = 7.0 / 250.0
PAPER_C = 1.0 / 60000.0


@dataclass(frozen=True)
class ProofParams:
    c1: float
    c2: float
    d1: float = 0.0
    d2: float = 0.0

    def __post_init__(self):
        for name in ("c1", "c2", "d1", "d2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.c1 > 0:
            raise ValueError("c1 must be positive")
        if not 0 < self.c2 <= C2_MAX:
            raise ValueError(f"c2 must lie in (0, {C2_MAX}]")
        if self.d1 < 0 or self.d2 < 0:
            raise ValueError("d1 and d2 must be nonnegative")


def big_set_bound(c1: float, d2: float) -> float:
    """Upper bound d2 / c1 + d2 on the measure of the big cells."""
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    return d2 / c1 + d2


def neighborhood_amplification(c1: float, dilation: float = 2.0) -> float:
    """Area growth of a big disk (radius >= sqrt(1 + c1) eta0) under dilation by ``dilation`` eta0.

    At the default dilation of 2 this is (sqrt(1 + c1) + 2)^2 / (1 + c1),
    which is at most 9 for c1 >= 0.
    """
    if c1 < 0:
        raise ValueError("c1 must be nonnegative")
    s = math.sqrt(1 + c1)
    return (s + dilation) ** 2 / (1 + c1)


class LensCheck(NamedTuple):
    lens_value: float
    bound_value: float
    holds: bool


def lens_closed_form(c2: float) -> float:
    """Area of two unit disks at distance 2 (1 - c2).

    2 arccos(1 - c2) - 2 sqrt((2 - c2)(1 - c2)^2 c2), with arccos(1 - c2)
    evaluated as 2 arcsin(sqrt(c2 / 2)) to avoid cancellation for small c2.
    """
    return 4 * math.asin(math.sqrt(c2 / 2)) - 2 * math.sqrt((2 - c2) * (1 - c2) ** 2 * c2)


def lens_lower_bound_check(c2: float) -> LensCheck:
    """Compare the unit lens at distance 2 (1 - c2) with 3.7 c2^(3/2)."""
    if not 0 < c2 <= C2_MAX:
        raise ValueError(f"c2 must lie in (0, {C2_MAX}]")
    lens = lens_closed_form(c2)
    general = lens_area(1.0, 1.0, 2 * (1 - c2))
    if abs(lens - general) > 1e-12:
        raise ArithmeticError(f"lens closed form {lens!r} disagrees with lens_area {general!r}")
    bound = LENS_COEFF * c2**1.5
    return LensCheck(lens, bound, lens >= bound)


def small_overlap_bound(c1: float, c2: float, d1: float) -> float:
    """(20 pi / 37) (1 + c1) / c2^(3/2) d1: measure of strongly overlapping small disks."""
    return 20 * math.pi / 37 * (1 + c1) / c2**1.5 * d1


def pair_neighborhood_factor(dilation: float = 2.0) -> float:
    """|dilated union of two tangent unit disks| / (2 pi).

    For dilation 2 this equals 9/2 + 2 sqrt(2) / pi + (9 / pi) arcsin(1/3),
    about 6.3739. Other dilations use the same union-of-two-disks area.
    """
    if dilation == 2.0:
        v = 4.5 + 2 * math.sqrt(2) / math.pi + 9 / math.pi * math.asin(1 / 3)
        assert v <= PAIR_AMPLIFICATION
        return v
    R = 1 + dilation
    return (2 * math.pi * R * R - lens_area(R, R, 2.0)) / (2 * math.pi)


def _coefficients(c1: float, c2: float, dilation: Optional[float]) -> tuple[float, float]:
    """(K1, K2): lhs = (1 - c2)^2 [1 - K1 d1 - K2 d2]."""
    if dilation is None:
        big, pair = BIG_AMPLIFICATION, PAIR_AMPLIFICATION
    else:
        big, pair = (1 + dilation) ** 2, pair_neighborhood_factor(dilation)
    k1 = pair * 20 * math.pi / 37 * (1 + c1) / c2**1.5
    k2 = big * (1 / c1 + 1)
    return k1, k2


def final_inequality_lhs(p: ProofParams, dilation: Optional[float] = None) -> float:
    """(1 - c2)^2 [1 - (9 d2 / c1 + 9 d2 + (128 pi / 37) ((1 + c1) / c2^(3/2)) d1)].

    ``dilation=None`` uses the rounded constants 9 and 32/5; a number uses
    the exact amplification factors for that dilation radius (in units of
    eta0) instead.
    """
    k1, k2 = _coefficients(p.c1, p.c2, dilation)
    return (1 - p.c2) ** 2 * (1 - (k2 * p.d2 + k1 * p.d1))


def worst_split(c1: float, c2: float, c: float, dilation: Optional[float] = None) -> tuple[float, float]:
    """Split d1 + d2 = c minimizing the left-hand side.

    The left-hand side is affine in (d1, d2), so its minimum over the
    segment sits at an endpoint: all of c goes to the larger coefficient.
    Ties go to d1.
    """
    k1, k2 = _coefficients(c1, c2, dilation)
    return (c, 0.0) if k1 >= k2 else (0.0, c)


def sweep_min_lhs(c1: float, c2: float, c: float, n: int = 1000, dilation: Optional[float] = None) -> float:
    """Minimum of the left-hand side over n equispaced splits of c (endpoints included)."""
    d1 = np.linspace(0.0, c, n)
    k1, k2 = _coefficients(c1, c2, dilation)
    lhs = (1 - c2) ** 2 * (1 - (k2 * (c - d1) + k1 * d1))
    return float(lhs.min())


def lens_monotonicity_check(c1: float, c2: float, n: int = 100) -> bool:
    """Spot check that the lens at distance (1 - c2)(r1 + r2) is smallest at r1 = r2 = 1.

    Scans an n x n grid of radii in [1, sqrt(1 + c1)].
    """
    rs = np.linspace(1.0, math.sqrt(1 + c1), n)
    base = lens_area(1.0, 1.0, 2 * (1 - c2))
    worst = min(lens_area(a, b, (1 - c2) * (a + b)) for a in rs for b in rs)
    return worst >= base - 1e-15


class CertifiedConstant(NamedTuple):
    c_max: float
    worst_split: tuple[float, float]


def certify_constant(c1: float, c2: float, dilation: Optional[float] = None, *, warn: bool = True) -> CertifiedConstant:
    """Largest c for which every split of c still contradicts the packing bound.

    c_max = (1 - (pi / sqrt 12) / (1 - c2)^2) / max(K1, K2); zero, with a
    logged warning, when (1 - c2)^2 does not exceed pi / sqrt 12.
    """
    lens = lens_lower_bound_check(c2)
    if not lens.holds:
        raise ArithmeticError(f"lens bound fails at c2={c2}")
    if neighborhood_amplification(c1) > BIG_AMPLIFICATION:
        raise ArithmeticError(f"neighbourhood amplification exceeds 9 at c1={c1}")
    k1, k2 = _coefficients(c1, c2, dilation)
    head = (1 - c2) ** 2
    if head <= BLIND_DENSITY:
        if warn:
            log.warning("(1 - c2)^2 = %.6g does not exceed pi/sqrt(12); no constant certifiable", head)
        return CertifiedConstant(0.0, (0.0, 0.0))
    c_max = (1 - BLIND_DENSITY / head) / max(k1, k2)
    return CertifiedConstant(c_max, worst_split(c1, c2, c_max, dilation))


@dataclass(frozen=True)
class CertificateReport:
    params: ProofParams
    big_set_bound: float
    neighborhood_bound: float
    overlap_bound: float
    pair_neighborhood_bound: float
    lhs: float
    blind_density: float
    margin: float
    contradiction: bool
    lens_value: float
    lens_bound: float
    amplification: float
    pair_factor: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = asdict(self.params)
        return d


def certificate_report(c1: float, c2: float, c: float) -> CertificateReport:
    """Evaluate every bound of the chain at the worst split of c."""
    d1, d2 = worst_split(c1, c2, c)
    p = ProofParams(c1, c2, d1, d2)
    lens = lens_lower_bound_check(c2)
    big = big_set_bound(c1, d2)
    over = small_overlap_bound(c1, c2, d1)
    lhs = final_inequality_lhs(p)
    margin = lhs - BLIND_DENSITY
    return CertificateReport(
        params=p,
        big_set_bound=big,
        neighborhood_bound=BIG_AMPLIFICATION * big,
        overlap_bound=over,
        pair_neighborhood_bound=PAIR_AMPLIFICATION * over,
        lhs=lhs,
        blind_density=BLIND_DENSITY,
        margin=margin,
        contradiction=margin > 0,
        lens_value=lens.lens_value,
        lens_bound=lens.bound_value,
        amplification=neighborhood_amplification(c1),
        pair_factor=pair_neighborhood_factor(),
    )


class ParameterOptimum(NamedTuple):
    c1: float
    c2: float
    c: float


def default_grid() -> tuple[np.ndarray, np.ndarray]:
    return np.geomspace(1e-4, 1e-1, 61), np.linspace(1e-3, C2_MAX, 50)


def optimize_parameters(search_grid: Optional[tuple[Sequence[float], Sequence[float]]] = None) -> ParameterOptimum:
    """Maximize certify_constant over (c1, c2).

    ``search_grid`` is a pair (c1 values, c2 values). The best grid point
    (ties to the lexicographically smallest pair) is refined by Nelder-Mead
    inside the grid's bounding box; the refinement is only accepted if it
    improves the incumbent.
    """
    c1s, c2s = search_grid if search_grid is not None else default_grid()
    c1s = np.asarray(c1s, dtype=float)
    c2s = np.asarray(c2s, dtype=float)
    if c1s.size == 0 or c2s.size == 0:
        raise ValueError("empty search grid")
    if np.any(c2s <= 0) or np.any(c2s > C2_MAX) or np.any(c1s <= 0):
        raise ValueError(f"grid must satisfy c1 > 0 and 0 < c2 <= {C2_MAX}")
    best = None
    for c1, c2 in sorted(itertools.product(c1s.tolist(), c2s.tolist())):
        v = certify_constant(c1, c2, warn=False).c_max
        if best is None or v > best[2]:
            best = (c1, c2, v)
    lo = np.array([c1s.min(), c2s.min()])
    hi = np.array([c1s.max(), c2s.max()])
    if np.all(hi > lo):

        def neg(x):
            x = np.clip(x, lo, hi)
            return -certify_constant(float(x[0]), float(x[1]), warn=False).c_max

        res = minimize(neg, np.array(best[:2]), method="Nelder-Mead", bounds=list(zip(lo, hi)),
                       options={"xatol": 1e-12, "fatol": 1e-16, "maxfev": 2000})
        x = np.clip(res.x, lo, hi)
        v = certify_constant(float(x[0]), float(x[1]), warn=False).c_max
        if v > best[2]:
            best = (float(x[0]), float(x[1]), v)
    return ParameterOptimum(*best)


def shrink_disks(disks: Sequence[Disk], c2: float) -> list[Disk]:
    """Scale every radius by (1 - c2) around its center.

    Requires |x_i - x_j| >= (1 - c2)(r_i + r_j) for every pair; the output
    disks are then pairwise disjoint (tangency allowed).
    """
    if not 0 <= c2 < 1:
        raise ValueError("c2 must lie in [0, 1)")
    if not disks:
        return []
    c = np.array([d.center for d in disks])
    r = np.array([d.radius for d in disks])
    dist = np.sqrt(((c[:, None, :] - c[None, :, :]) ** 2).sum(-1))
    need = (1 - c2) * (r[:, None] + r[None, :])
    bad = np.argwhere(np.triu(dist < need * (1 - 1e-12), k=1))
    if len(bad):
        i, j = bad[0]
        raise GeometryError(
            f"disks {i} and {j} are too close: distance {dist[i, j]!r} < (1 - c2)(r_i + r_j) = {need[i, j]!r}"
        )
    out = [d.scaled(1 - c2) for d in disks]
    rr = r * (1 - c2)
    overlap = np.triu(dist < (rr[:, None] + rr[None, :]) * (1 - 1e-12), k=1)
    assert not overlap.any(), "shrunk disks overlap"
    return out
