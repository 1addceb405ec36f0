"""Walk through the chain of inequalities behind the quantitative constant.

Evaluates each bound at the reference parameters, then searches the
parameter grid for the largest constant the chain certifies.
"""

from fraenkel import certificate_report, certify_constant, optimize_parameters
from fraenkel.certificate import PAPER_C, PAPER_C1, PAPER_C2, lens_monotonicity_check, sweep_min_lhs


def main():
    rep = certificate_report(PAPER_C1, PAPER_C2, PAPER_C)
    for key, value in rep.to_dict().items():
        print(f"{key:26s} {value}")

    print(f"\nworst split over 1000 points: lhs >= {sweep_min_lhs(PAPER_C1, PAPER_C2, PAPER_C):.6f}")
    print(f"lens bound monotone in c2: {lens_monotonicity_check(PAPER_C1, PAPER_C2)}")

    cert = certify_constant(PAPER_C1, PAPER_C2)
    print(f"\nlargest c at the reference point: {cert.c_max:.6e} (1/{1 / cert.c_max:.0f})")
    best = optimize_parameters()
    print(f"best on the default grid: c = {best.c:.6e} at c1 = {best.c1:.5f}, c2 = {best.c2:.5f}")
    for dilation in (2.0, 1.5, 1.0):
        print(f"exact constants, dilation {dilation}: c_max = {certify_constant(PAPER_C1, PAPER_C2, dilation).c_max:.4e}")


if __name__ == "__main__":
    main()
