"""Closed-form spectral constants and Pleijel-type bounds.

The first zero j of the Bessel function J0 is computed here (power series
plus Newton) rather than hard-coded. The hexagon eigenvalue constant 18.5762
is an external numerical value with no solver behind it in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

# lambda_1(H) = HEXAGON_EIG_CONST / |H| for a regular hexagon H (external value)
HEXAGON_EIG_CONST = 18.5762
# Bourgain's improvement of Pleijel's constant, quoted only
BOURGAIN_IMPROVEMENT = 3e-9
# Hansen-Nadirashvili amplification coefficient
HN_COEFF = 1.0 / 250.0
LITERATURE_J = 2.404825557695773


def bessel_j0(x: float) -> float:
    """J0(x) = sum_k (-1)^k (x/2)^(2k) / (k!)^2; accurate for |x| < 10."""
    q = -(x * x) / 4.0
    term, total, k = 1.0, 1.0, 0
    while abs(term) > 1e-17 * max(1.0, abs(total)):
        k += 1
        term *= q / (k * k)
        total += term
    return total


def bessel_j1(x: float) -> float:
    """J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)."""
    h = x / 2.0
    q = -(h * h)
    term = h
    total, k = h, 0
    while abs(term) > 1e-17 * max(1.0, abs(total)):
        k += 1
        term *= q / (k * (k + 1))
        total += term
    return total


@lru_cache(maxsize=None)
def bessel_zero() -> float:
    """First positive zero of J0 by Newton iteration (J0' = -J1)."""
    x = 2.4
    for _ in range(50):
        step = bessel_j0(x) / -bessel_j1(x)
        x -= step
        if abs(step) < 1e-15:
            break
    return x


@dataclass(frozen=True)
class SpectralConstants:
    bessel_j: float
    pleijel_limit: float
    hexagon_eig_const: float
    stability_C: Optional[float] = None

    def __post_init__(self):
        if not 2.404 <= self.bessel_j <= 2.405:
            raise ValueError(f"Bessel zero {self.bessel_j} out of range")
        if self.pleijel_limit > 0.7:
            raise ValueError("Pleijel limit exceeds 7/10")
        if self.stability_C is not None and not self.stability_C > 0:
            raise ValueError("stability constant must be positive")

    @classmethod
    def compute(cls, stability_C: Optional[float] = None) -> "SpectralConstants":
        j = bessel_zero()
        return cls(j, (2 / j) ** 2, HEXAGON_EIG_CONST, stability_C)


def pleijel_limit() -> float:
    """(2 / j)^2, Pleijel's asymptotic bound on nodal domains per eigenvalue index."""
    return (2.0 / bessel_zero()) ** 2


def lambda1_disk(area: float) -> float:
    """First Dirichlet eigenvalue pi j^2 / area of a disk."""
    if not area > 0:
        raise ValueError("area must be positive")
    return math.pi * bessel_zero() ** 2 / area


def weyl_eigenvalue(n: int, area: float) -> float:
    """Leading Weyl asymptotic 4 pi n / area for lambda_n."""
    if n < 1 or not area > 0:
        raise ValueError("need n >= 1 and area > 0")
    return 4 * math.pi * n / area


def pleijel_count(n: int, area: float = 1.0) -> float:
    """Number of disks of radius eta0 fitting in the area, where lambda_1(B(eta0)) = weyl_eigenvalue(n, area).

    Algebraically this is (2/j)^2 n: the count grows with the index n, the
    reading adopted for the limit in the improved estimate.
    """
    lam = weyl_eigenvalue(n, area)
    eta0_sq = bessel_zero() ** 2 / lam
    return area / (math.pi * eta0_sq)


def hexagonal_obstruction() -> float:
    """4 pi / 18.5762: nodal count ratio a hexagonal partition would produce."""
    return 4 * math.pi / HEXAGON_EIG_CONST


def hansen_nadirashvili_factor(inradius: float, equiv_radius: float) -> float:
    """1 + (1/250)(1 - r_i / r_0)^3."""
    if not (0 < inradius <= equiv_radius):
        raise ValueError("need 0 < inradius <= equiv_radius")
    return 1 + HN_COEFF * (1 - inradius / equiv_radius) ** 3


def asymmetry_branch_gain(c: float, C: float) -> float:
    """c^3 C / (216 + 6 c^2 C), kept separate so tiny gains are not lost to rounding."""
    _check_cC(c, C)
    return c**3 * C / (216 + 6 * c * c * C)


def improved_pleijel_factor(c: float, C: float) -> float:
    """1 - c^3 C / (216 + 6 c^2 C): the asymmetry branch of the improved estimate."""
    return 1 - asymmetry_branch_gain(c, C)


def deviation_branch_factor(c: float) -> float:
    """1 - c/2: the deviation branch of the improved estimate."""
    if not 0 < c <= 2:
        raise ValueError("c must lie in (0, 2]")
    return 1 - c / 2


def pleijel_epsilon(c: float, C: float) -> float:
    """epsilon_0 = (2/j)^2 min(c/2, c^3 C / (216 + 6 c^2 C)).

    The smaller of the two branch gains, since either branch may occur.
    Only meaningful for a certified c and a proven stability constant C;
    neither is fixed here.
    """
    gain = min(asymmetry_branch_gain(c, C), c / 2)
    return pleijel_limit() * gain


def spectral_partition_bound(k: int, area: float, eps0: float = 0.0) -> float:
    """(pi j^2 + eps0) k / area: lower bound on the max and the mean of lambda_1 over k cells."""
    if k < 1 or not area > 0:
        raise ValueError("need k >= 1 and area > 0")
    if eps0 < 0:
        raise ValueError("eps0 must be nonnegative")
    return (math.pi * bessel_zero() ** 2 + eps0) * k / area


def _check_cC(c: float, C: float) -> None:
    if not 0 < c <= 2:
        raise ValueError("c must lie in (0, 2]")
    if C is None or not C > 0:
        raise ValueError("stability constant C must be supplied and positive")
