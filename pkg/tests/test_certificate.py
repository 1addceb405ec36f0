import json
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraenkel.certificate import (
    BLIND_DENSITY,
    CertificateReport,
    ProofParams,
    big_set_bound,
    certificate_report,
    certify_constant,
    final_inequality_lhs,
    lens_closed_form,
    lens_lower_bound_check,
    lens_monotonicity_check,
    neighborhood_amplification,
    optimize_parameters,
    pair_neighborhood_factor,
    shrink_disks,
    small_overlap_bound,
    sweep_min_lhs,
    worst_split,
)
from fraenkel.geometry import Disk, GeometryError, lens_area

C1, C2, C = 1 / 250, 7 / 250, 1 / 60000


def mp_lhs(c1, c2, d1, d2):
    mpmath.mp.dps = 40
    c1, c2, d1, d2 = map(mpmath.mpf, (c1, c2, d1, d2))
    k1 = 128 * mpmath.pi / 37 * (1 + c1) / c2 ** mpmath.mpf(1.5)
    return (1 - c2) ** 2 * (1 - (9 * d2 / c1 + 9 * d2 + k1 * d1))


class TestProofParams:
    def test_valid(self):
        ProofParams(C1, C2, 0.0, 0.0)

    @pytest.mark.parametrize(
        "args", [(0, C2), (-1, C2), (C1, 0), (C1, 0.06), (C1, C2, -1e-9, 0), (C1, C2, 0, math.nan), (math.inf, C2)]
    )
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            ProofParams(*args)


class TestBigSet:
    def test_zero(self):
        assert big_set_bound(C1, 0) == 0

    def test_paper_point(self):
        exact = Fraction(1, 60000) * 250 + Fraction(1, 60000)
        assert big_set_bound(C1, C) == pytest.approx(float(exact), rel=1e-15)
        assert big_set_bound(C1, C) == pytest.approx(0.00418333333, rel=1e-9)

    def test_c1_one(self):
        assert big_set_bound(1, 0.3) == pytest.approx(0.6)

    def test_bad_c1(self):
        with pytest.raises(ValueError):
            big_set_bound(0, 1)


class TestAmplification:
    def test_values(self):
        assert neighborhood_amplification(0) == 9
        assert neighborhood_amplification(3) == 4
        assert neighborhood_amplification(C1) == pytest.approx(8.976, abs=5e-4)

    def test_bounded_by_nine(self):
        assert all(neighborhood_amplification(c) <= 9 for c in np.linspace(0, 3, 1000))


class TestLens:
    def test_paper_point(self):
        chk = lens_lower_bound_check(C2)
        assert chk.holds
        assert chk.bound_value == pytest.approx(0.017336, abs=1e-6)
        # independent 40-digit evaluation of the closed form
        mpmath.mp.dps = 40
        c = mpmath.mpf(7) / 250
        ref = 2 * mpmath.acos(1 - c) - 2 * mpmath.sqrt((2 - c) * (1 - c) ** 2 * c)
        assert chk.lens_value == pytest.approx(float(ref), rel=1e-13)
        assert chk.lens_value == pytest.approx(0.0175949604350728, rel=1e-12)

    def test_endpoint(self):
        assert lens_lower_bound_check(0.05).holds

    def test_small_c2_ratio(self):
        c = 1e-10
        ratio = lens_closed_form(c) / (3.7 * c**1.5)
        assert ratio == pytest.approx(8 * math.sqrt(2) / 3 / 3.7, rel=1e-3)
        assert ratio > 1

    @pytest.mark.parametrize("c2", [0.0, -0.01, 0.051])
    def test_domain(self, c2):
        with pytest.raises(ValueError):
            lens_lower_bound_check(c2)

    def test_closed_form_vs_lens_area(self):
        for c2 in np.linspace(1e-6, 0.05, 1000):
            assert abs(lens_closed_form(c2) - lens_area(1, 1, 2 * (1 - c2))) <= 1e-12

    def test_monotonicity_in_radii(self):
        assert lens_monotonicity_check(C1, C2)


class TestOverlap:
    def test_zero(self):
        assert small_overlap_bound(C1, C2, 0) == 0

    def test_value(self):
        ref = float(Fraction(20) * Fraction(251, 250)) * math.pi / 37 / (7 / 250) ** 1.5
        assert small_overlap_bound(C1, C2, 1) == pytest.approx(ref, rel=1e-14)
        assert small_overlap_bound(C1, C2, 1) == pytest.approx(363.894, abs=1e-3)

    def test_linear(self):
        assert small_overlap_bound(C1, C2, 2e-5) == pytest.approx(2 * small_overlap_bound(C1, C2, 1e-5), rel=1e-15)


class TestPairFactor:
    def test_range(self):
        v = pair_neighborhood_factor()
        assert 6.37 <= v <= 6.38
        assert v <= 32 / 5

    def test_union_of_two_radius_three_disks(self):
        # dilating two tangent unit disks by 2 gives two radius-3 disks at distance 2
        union = 18 * math.pi - lens_area(3, 3, 2)
        assert pair_neighborhood_factor() == pytest.approx(union / (2 * math.pi), rel=1e-14)

    def test_general_dilation_continuous(self):
        assert pair_neighborhood_factor(2.0 + 1e-9) == pytest.approx(pair_neighborhood_factor(), rel=1e-8)


class TestFinalInequality:
    def test_no_budget(self):
        assert final_inequality_lhs(ProofParams(C1, C2)) == pytest.approx((1 - C2) ** 2, rel=1e-15)
        assert (1 - C2) ** 2 == pytest.approx(0.944784, abs=1e-12)

    def test_paper_point(self):
        d1, d2 = worst_split(C1, C2, C)
        lhs = final_inequality_lhs(ProofParams(C1, C2, d1, d2))
        assert lhs == pytest.approx(float(mp_lhs(C1, C2, d1, d2)), rel=1e-13)
        assert lhs == pytest.approx(0.90811, abs=5e-6)
        assert lhs >= BLIND_DENSITY + 1e-3 - 1e-9

    def test_every_split_clears_the_target(self):
        for d1 in np.linspace(0, C, 1001):
            assert final_inequality_lhs(ProofParams(C1, C2, d1, C - d1)) >= BLIND_DENSITY + 1e-3 - 1e-9

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0, 1e-4), st.floats(0, 1e-4), st.floats(1e-7, 1e-5))
    def test_strictly_decreasing(self, d1, d2, eps):
        base = final_inequality_lhs(ProofParams(C1, C2, d1, d2))
        assert final_inequality_lhs(ProofParams(C1, C2, d1 + eps, d2)) < base
        assert final_inequality_lhs(ProofParams(C1, C2, d1, d2 + eps)) < base


class TestCertify:
    def test_paper_point(self):
        res = certify_constant(C1, C2)
        assert res.c_max >= C
        assert res.c_max == pytest.approx(1.7217581925647794e-05, rel=1e-12)
        assert sum(res.worst_split) == pytest.approx(res.c_max)

    def test_boundary_is_tight(self):
        res = certify_constant(C1, C2)
        d1, d2 = res.worst_split
        assert final_inequality_lhs(ProofParams(C1, C2, d1, d2)) == pytest.approx(BLIND_DENSITY, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(1e-3, 0.5), st.floats(1e-3, 0.047))
    def test_closed_form_equals_sweep(self, c1, c2):
        res = certify_constant(c1, c2)
        assert abs(sweep_min_lhs(c1, c2, res.c_max, 1000) - BLIND_DENSITY) <= 1e-12

    def test_limits(self):
        assert certify_constant(C1, 1e-9).c_max < 1e-12
        assert certify_constant(1e-12, C2).c_max < 1e-12

    def test_no_room(self, caplog):
        res = certify_constant(C1, 0.05)
        assert res.c_max == 0.0
        assert "pi/sqrt(12)" in caplog.text

    def test_monotone_in_coefficients(self):
        # larger c1 lowers K2 and raises K1; at fixed c2 the maximum sits where they cross
        a = certify_constant(C1, C2, dilation=2.0).c_max
        b = certify_constant(C1, C2, dilation=1.0).c_max
        assert b > a

    def test_dilation_exact_constants_beat_rounded(self):
        assert certify_constant(C1, C2, dilation=2.0).c_max >= certify_constant(C1, C2).c_max


class TestOptimize:
    def test_default_grid(self):
        best = optimize_parameters()
        assert best.c >= C
        assert best.c >= certify_constant(C1, C2).c_max

    def test_single_point(self):
        best = optimize_parameters(([C1], [C2]))
        assert (best.c1, best.c2) == (C1, C2)
        assert best.c == certify_constant(C1, C2).c_max

    def test_refinement_never_worse(self):
        grid = (np.linspace(0.002, 0.008, 4), np.linspace(0.02, 0.04, 4))
        best = optimize_parameters(grid)
        on_grid = max(certify_constant(a, b).c_max for a in grid[0] for b in grid[1])
        assert best.c >= on_grid

    def test_empty(self):
        with pytest.raises(ValueError):
            optimize_parameters(([], [C2]))

    def test_outside_domain(self):
        with pytest.raises(ValueError):
            optimize_parameters(([C1], [0.06]))


class TestShrink:
    def test_tangent_after_shrink(self):
        c2 = 0.03
        out = shrink_disks([Disk((0, 0), 1), Disk((2 * (1 - c2), 0), 1)], c2)
        assert out[0].radius + out[1].radius == pytest.approx(2 * (1 - c2), rel=1e-15)

    def test_identity(self):
        disks = [Disk((0, 0), 1), Disk((3, 0), 1)]
        assert shrink_disks(disks, 0.0) == disks

    def test_violation(self):
        with pytest.raises(GeometryError, match="disks 0 and 1"):
            shrink_disks([Disk((0, 0), 1), Disk((1.0, 0), 1)], 0.03)

    def test_random_admissible(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            c2 = float(rng.uniform(0, 0.05))
            disks = []
            while len(disks) < 12:
                d = Disk(rng.uniform(0, 10, 2), float(rng.uniform(0.75, 1.0)))
                if all(math.dist(d.center, e.center) >= (1 - c2) * (d.radius + e.radius) for e in disks):
                    disks.append(d)
            out = shrink_disks(disks, c2)
            for i in range(len(out)):
                for j in range(i):
                    assert math.dist(out[i].center, out[j].center) >= (out[i].radius + out[j].radius) * (1 - 1e-12)


class TestReport:
    def test_fields_and_json(self):
        rep = certificate_report(C1, C2, C)
        assert isinstance(rep, CertificateReport)
        assert rep.contradiction and rep.margin > 0
        d = json.loads(json.dumps(rep.to_dict()))
        for key in ("big_set_bound", "pair_neighborhood_bound", "lhs", "margin", "neighborhood_bound", "overlap_bound"):
            assert key in d and math.isfinite(d[key])
        p = rep.params
        again = (1 - p.c2) ** 2 * (1 - (rep.neighborhood_bound + rep.pair_neighborhood_bound))
        assert rep.lhs == pytest.approx(again, rel=1e-15)
        assert rep.margin == rep.lhs - rep.blind_density
        assert rep.contradiction == (rep.margin > 0)

    def test_paper_chain_finite(self):
        rep = certificate_report(C1, C2, C)
        assert rep.lhs >= BLIND_DENSITY + 1e-3 - 1e-9

    def test_no_contradiction_for_large_c(self):
        assert not certificate_report(C1, C2, 1e-3).contradiction
