"""Sweeps, infeasible intervals, and two-curve comparisons.

The dominance counts asserted here were computed on the default grid and
cross-checked at 40-digit precision with mpmath before being frozen; in
particular the comparisons document where the qualitative "larger
parameter, larger rate" intuition actually holds and where it flips.
"""

import numpy as np
import pytest

from stologistic.cubic import ModelParams
from stologistic.errors import NumericalError, ValidationError
from stologistic.feasibility import (
    BranchCurve,
    GridSpec,
    Status,
    compare_sweeps,
    infeasible_intervals,
    sweep_mu,
)
from stologistic.output import curve_to_csv
from stologistic.roots import classify

# Tangency boundary of (alpha=0.5, beta=1.1, v=1.2), from test_roots.
TANGENT_MU = 0.645699586609825

# Frozen refined endpoints of the single infeasible band of
# (alpha=0.5, beta=1.1, v=1.2) on the default grid.
BAND_05_11_12 = (0.645699586, 0.819567018)


class TestGridSpec:
    def test_defaults(self):
        grid = GridSpec()
        values = grid.values()
        assert len(values) == 2001
        assert values[0] == 0.0005
        assert values[-1] == 0.9995

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(mu_min=0.0, mu_max=0.5, points=10),
            dict(mu_min=0.5, mu_max=0.5, points=10),
            dict(mu_min=0.2, mu_max=1.0, points=10),
            dict(mu_min=0.2, mu_max=0.8, points=1),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            GridSpec(**kwargs)


class TestSweep:
    def test_reference_statuses(self):
        curve = sweep_mu(2.0, 1.2, 1.5, GridSpec(mu_min=0.05, mu_max=0.5, points=2))
        assert [row.status for row in curve.rows] == [Status.FEASIBLE, Status.INFEASIBLE]
        assert curve.rows[0].upper_r >= curve.rows[0].lower_r
        assert curve.rows[1].lower_r is None

    def test_two_point_feasible_grid(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(mu_min=0.2, mu_max=0.25, points=2))
        assert len(curve.rows) == 2
        for row in curve.rows:
            assert row.status is Status.FEASIBLE
            assert row.upper_r >= row.lower_r

    def test_branch_ordering_and_status_consistency(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(points=401))
        for row in curve.rows:
            both_present = row.lower_r is not None and row.upper_r is not None
            assert (row.status is Status.FEASIBLE) == both_present
            if both_present:
                assert row.upper_r >= row.lower_r
        # Spot-check rows against direct classification.
        for row in curve.rows[::100]:
            cls = classify(ModelParams(alpha=0.5, beta=1.1, v=1.2, mu=row.mu))
            expected_feasible = len(cls.positive_roots) == 2
            assert (row.status is Status.FEASIBLE) == expected_feasible

    def test_tangent_row(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(mu_min=TANGENT_MU, mu_max=0.9, points=3))
        row = curve.rows[0]
        assert row.status is Status.TANGENT
        assert row.lower_r is not None
        assert row.upper_r is None
        assert row.lower_sigma2 is not None

    def test_numerical_failure_marks_row_and_continues(self, monkeypatch):
        import stologistic.feasibility as feas

        real = feas.classify

        def flaky(params):
            if abs(params.mu - 0.3) < 1e-12:
                raise NumericalError("injected")
            return real(params)

        monkeypatch.setattr(feas, "classify", flaky)
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(mu_min=0.2, mu_max=0.4, points=3))
        assert [row.status for row in curve.rows] == [
            Status.FEASIBLE,
            Status.ERROR,
            Status.FEASIBLE,
        ]

    def test_determinism(self):
        spec = GridSpec(points=301)
        first = sweep_mu(1.1, 1.1, 1.2, spec)
        second = sweep_mu(1.1, 1.1, 1.2, spec)
        assert first == second
        assert curve_to_csv(first) == curve_to_csv(second)


class TestInfeasibleIntervals:
    def test_all_feasible_is_empty(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(mu_min=0.1, mu_max=0.5, points=41))
        assert infeasible_intervals(curve) == []

    def test_single_band_with_refined_endpoints(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(points=501))
        intervals = infeasible_intervals(curve, refine_tol=1e-8)
        assert len(intervals) == 1
        lo, hi = intervals[0]
        assert lo == pytest.approx(BAND_05_11_12[0], abs=1e-6)
        assert hi == pytest.approx(BAND_05_11_12[1], abs=1e-6)
        # The refined left endpoint reproduces the independently-bisected
        # tangency boundary.
        assert lo == pytest.approx(TANGENT_MU, abs=1e-6)

    def test_band_touching_grid_edge_keeps_edge(self):
        curve = sweep_mu(1.1, 1.1, 1.2, GridSpec(mu_min=0.1, mu_max=0.5, points=81))
        intervals = infeasible_intervals(curve)
        assert len(intervals) == 1
        assert intervals[0] == (0.1, 0.5)

    def test_refinement_tolerance_validation(self):
        curve = sweep_mu(0.5, 1.1, 1.2, GridSpec(mu_min=0.2, mu_max=0.3, points=3))
        with pytest.raises(ValidationError):
            infeasible_intervals(curve, refine_tol=0.0)

    def test_growing_noise_widens_the_band(self):
        spec = GridSpec(points=801)
        narrow = infeasible_intervals(sweep_mu(0.5, 1.0, 1.2, spec))
        wide = infeasible_intervals(sweep_mu(0.5, 1.0, 2.2, spec))
        assert len(narrow) == 1 and len(wide) == 1
        assert wide[0][0] < narrow[0][0]
        assert narrow[0][1] < wide[0][1]


class TestCompareSweeps:
    def test_identical_curves(self):
        spec = GridSpec(points=201)
        curve = sweep_mu(0.5, 1.1, 1.2, spec)
        report = compare_sweeps(curve, curve)
        assert report.lower_a_greater == 0
        assert report.lower_b_greater == 0
        assert report.upper_a_greater == 0
        assert report.upper_b_greater == 0
        assert all(
            d.lower_diff in (None, 0.0) and d.upper_diff in (None, 0.0)
            for d in report.deltas
        )
        assert report.a_contains_b == report.b_contains_a

    def test_grid_mismatch_rejected(self):
        a = sweep_mu(0.5, 1.1, 1.2, GridSpec(points=11))
        b = sweep_mu(0.5, 1.1, 1.2, GridSpec(points=12))
        with pytest.raises(ValidationError):
            compare_sweeps(a, b)

    def test_alpha_comparison_structure(self):
        # alpha=1.1 vs alpha=1.4 at beta=1.1, v=1.2 (default grid): the
        # larger alpha raises the upper branch at every common feasible
        # point, and the lower branch at every common point right of the
        # bands; left of the bands the lower branch moves the other way.
        curve_a = sweep_mu(1.1, 1.1, 1.2)
        curve_b = sweep_mu(1.4, 1.1, 1.2)
        report = compare_sweeps(curve_a, curve_b)
        assert report.common_feasible == 490
        assert report.upper_b_greater == 490
        assert report.lower_b_greater == 435
        assert report.lower_a_greater == 55
        for row_a, row_b in zip(curve_a.rows, curve_b.rows):
            if row_a.status is Status.FEASIBLE and row_b.status is Status.FEASIBLE:
                assert row_b.upper_r > row_a.upper_r
                if row_a.mu > 0.783:
                    assert row_b.lower_r > row_a.lower_r
                if row_a.mu < 0.0279:
                    assert row_b.lower_r < row_a.lower_r
        # Larger alpha narrows the infeasible band here.
        assert report.a_contains_b
        assert not report.b_contains_a

    def test_beta_comparison_structure(self):
        # beta=1.1 vs beta=1.9 at alpha=0.5, v=1.2: left of both bands the
        # larger beta raises the UPPER branch and slightly lowers the lower
        # one; right of both bands it raises the lower branch.
        curve_a = sweep_mu(0.5, 1.1, 1.2)
        curve_b = sweep_mu(0.5, 1.9, 1.2)
        report = compare_sweeps(curve_a, curve_b)
        assert report.common_feasible == 1616
        left_end, right_start = 0.6456, 0.8378
        for row_a, row_b in zip(curve_a.rows, curve_b.rows):
            if row_a.status is Status.FEASIBLE and row_b.status is Status.FEASIBLE:
                if row_a.mu < left_end:
                    assert row_b.upper_r > row_a.upper_r
                    assert row_b.lower_r < row_a.lower_r
                if row_a.mu > right_start:
                    assert row_b.lower_r > row_a.lower_r

    def test_noise_comparison_structure(self):
        # v=1.2 vs v=2.2 at alpha=0.5, beta=1.0: the larger noise lowers
        # the upper branch everywhere and raises the lower branch except
        # near mu -> 1; its infeasible band strictly contains the other.
        curve_a = sweep_mu(0.5, 1.0, 1.2)
        curve_b = sweep_mu(0.5, 1.0, 2.2)
        report = compare_sweeps(curve_a, curve_b)
        assert report.common_feasible == 812
        assert report.upper_a_greater == 812
        assert report.lower_b_greater == 700
        assert report.lower_a_greater == 112
        for row_a, row_b in zip(curve_a.rows, curve_b.rows):
            if row_a.status is Status.FEASIBLE and row_b.status is Status.FEASIBLE:
                assert row_b.upper_r < row_a.upper_r
                if row_a.mu < 0.94:
                    assert row_b.lower_r > row_a.lower_r
        assert report.b_contains_a
        assert not report.a_contains_b

    def test_right_segment_upper_branch_dominates_left(self):
        # For every preset curve the upper branch right of the band tops
        # the upper branch left of it.
        for alpha, beta, v in [
            (1.1, 1.1, 1.2),
            (1.4, 1.1, 1.2),
            (0.5, 1.1, 1.2),
            (0.5, 1.9, 1.2),
            (0.5, 1.0, 1.2),
            (0.5, 1.0, 2.2),
        ]:
            curve = sweep_mu(alpha, beta, v, GridSpec(points=501))
            intervals = infeasible_intervals(curve, refine_tol=1e-6)
            assert len(intervals) == 1
            lo, hi = intervals[0]
            left = [r.upper_r for r in curve.rows if r.status is Status.FEASIBLE and r.mu < lo]
            right = [r.upper_r for r in curve.rows if r.status is Status.FEASIBLE and r.mu > hi]
            assert max(right) > max(left)
