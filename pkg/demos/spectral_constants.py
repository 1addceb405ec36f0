"""Spectral constants that frame the nodal-count problem."""

from fraenkel import SpectralConstants, improved_pleijel_factor, spectral_partition_bound
from fraenkel.certificate import PAPER_C
from fraenkel.spectral import pleijel_epsilon


def main():
    sc = SpectralConstants.compute()
    print(f"first Bessel zero j         {sc.bessel_j:.12f}")
    print(f"Pleijel limit (2/j)^2       {sc.pleijel_limit:.6f}")
    print(f"hexagonal obstruction       {4 * 3.141592653589793 / sc.hexagon_eig_const:.6f}")
    for C in (0.1, 1.0, 10.0):
        eps = pleijel_epsilon(PAPER_C, C)
        print(f"C = {C:5.1f}: epsilon = {eps:.3e}, improved factor = {improved_pleijel_factor(PAPER_C, C):.15f}")
    print(f"\nlower bound on lambda for 100 cells of total area 1: {spectral_partition_bound(100, 1.0):.2f}")


if __name__ == "__main__":
    main()
