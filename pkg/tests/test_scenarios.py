"""BB84 curves, sweeps, verification campaign, conjecture scan."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qig.errors import ValidationError
from qig.numerics import binary_entropy
from qig.scenarios import (
    SweepSpec,
    bb84_closed_forms,
    bb84_crossing,
    bb84_ensemble,
    bb84_view,
    conjecture_scan,
    default_sweep_grid,
    sweep,
    theorem_grid,
    verify_random,
)
from qig.states import Observable, ensemble_average, holevo_bound


class TestBB84:
    def test_ensemble_shape_and_labels(self):
        e = bb84_ensemble()
        assert e.labels == ("z0", "z1", "x+", "x-")
        assert np.allclose(e.probabilities, 0.25)
        assert np.allclose(ensemble_average(e).matrix, 0.5 * np.eye(2), atol=1e-16)

    def test_holevo_is_one(self):
        assert holevo_bound(bb84_ensemble()) == pytest.approx(1.0, abs=1e-12)

    def test_closed_forms_at_zero(self):
        assert bb84_closed_forms(0.0, 1.0) == (0.0, 0.5)

    def test_closed_forms_sum_to_half(self):
        for g in np.linspace(0.0, 5.0, 101):
            iaz, iax = bb84_closed_forms(float(g), 1.0)
            assert abs(iaz + iax - 0.5) <= 1e-12
            assert 0.0 <= iaz <= 0.5
            assert 0.0 <= iax <= 0.5

    def test_strong_coupling_saturates(self):
        iaz, iax = bb84_closed_forms(40.0, 1.0)
        assert abs(iaz - 0.5) <= 1e-9
        assert abs(iax) <= 1e-9

    def test_unit_coupling_values(self):
        iaz, iax = bb84_closed_forms(1.0, 1.0)
        assert iaz == pytest.approx(0.357674583355, abs=1e-12)
        assert iax == pytest.approx(0.142325416645, abs=1e-12)

    def test_only_ratio_matters(self):
        for g, delta in ((1.0, 1.0), (2.0, 2.0), (0.25, 0.25)):
            assert bb84_closed_forms(g, delta) == bb84_closed_forms(1.0, 1.0)

    def test_crossing_located_and_stable(self):
        g_star = bb84_crossing()
        # crossing solves H((1 + e^{-g^2/2})/2) = 1/2
        assert binary_entropy(0.5 * (1.0 + math.exp(-0.5 * g_star * g_star))) == pytest.approx(
            0.5, abs=1e-11
        )
        assert g_star == pytest.approx(0.705028806686, abs=1e-9)
        # stable against bracket refinement
        assert abs(bb84_crossing(lo=0.0, hi=2.0) - g_star) < 1e-6
        assert abs(bb84_crossing(lo=0.5, hi=1.0) - g_star) < 1e-6


class TestSweep:
    def test_bb84_single_point_zero(self):
        spec = SweepSpec((0.0,), quantities=("I_a_z", "I_a_x"))
        result = sweep(bb84_ensemble(), spec)
        assert result.columns == ("g_over_delta", "I_a_z", "I_a_x")
        assert result.rows == ((0.0, 0.0, 0.5),)

    def test_bb84_unit_point(self):
        spec = SweepSpec((1.0,), quantities=("I_a_z", "I_a_x"))
        (row,) = sweep(bb84_ensemble(), spec).rows
        assert row[1] == pytest.approx(0.357674583355, abs=1e-12)
        assert row[2] == pytest.approx(0.142325416645, abs=1e-12)

    def test_single_member_ensemble_gains_nothing(self):
        e = bb84_ensemble()
        single = type(e)([(1.0, e.members[0].state, "only")])
        spec = SweepSpec(tuple(np.linspace(0.0, 5.0, 11)), quantities=("I_a_z",))
        for row in sweep(single, spec).rows:
            assert row[1] == 0.0

    def test_all_quantities_columns(self):
        spec = SweepSpec((0.0, 1.0, 2.0))
        result = sweep(bb84_ensemble(), spec)
        assert result.columns == (
            "g_over_delta", "I_a_z", "I_a_x", "chi", "complementarity_rhs", "I_p",
        )
        for row in result.rows:
            assert row[3] == pytest.approx(1.0, abs=1e-12)  # chi
            assert row[4] == 1.0  # complementarity rhs
            assert row[5] == pytest.approx(0.5, abs=1e-12)  # projective information

    def test_pipeline_path_matches_closed_form(self):
        # observable {2, 0} has the same gap as {1, -1}: the generic pipeline
        # route must reproduce the closed-form curves
        e = bb84_ensemble()
        grid = tuple(np.linspace(0.0, 4.0, 9))
        fast = sweep(e, SweepSpec(grid, quantities=("I_a_z", "I_a_x")))
        piped = sweep(e, SweepSpec(grid, quantities=("I_a_z", "I_a_x")), obs=Observable((2.0, 0.0)))
        for fr, pr in zip(fast.rows, piped.rows):
            assert fr[1] == pytest.approx(pr[1], abs=1e-10)
            assert fr[2] == pytest.approx(pr[2], abs=1e-10)

    def test_parallel_equals_serial(self):
        e = bb84_ensemble()
        grid = tuple(np.linspace(0.0, 5.0, 26))
        spec = SweepSpec(grid, quantities=("I_a_z", "I_a_x"))
        serial = sweep(e, spec, obs=Observable((2.0, 0.0)), workers=1)
        parallel = sweep(e, spec, obs=Observable((2.0, 0.0)), workers=4)
        assert serial == parallel

    def test_x_gain_refused_beyond_qubits(self):
        from qig.sampling import random_ensemble

        e = random_ensemble(np.random.default_rng(1), 3)
        spec = SweepSpec((0.0, 1.0), quantities=("I_a_z", "I_a_x"))
        with pytest.raises(ValidationError):
            sweep(e, spec, obs=Observable((0.0, 1.0, 2.0)))

    def test_qutrit_z_gain_works(self):
        from qig.sampling import random_ensemble

        e = random_ensemble(np.random.default_rng(2), 3)
        spec = SweepSpec((0.0, 1.0, 40.0), quantities=("I_a_z", "chi", "I_p"))
        rows = sweep(e, spec, obs=Observable((0.0, 1.0, 2.0))).rows
        assert rows[0][1] == 0.0
        assert rows[-1][1] == pytest.approx(rows[-1][3], abs=1e-6)  # saturates at I_p
        for row in rows:
            assert row[1] <= row[2] + 1e-9  # chi ceiling

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            SweepSpec((1.0, 0.5))
        with pytest.raises(ValidationError):
            SweepSpec((0.0, 0.0))
        with pytest.raises(ValidationError):
            SweepSpec((0.0, 1.0), quantities=("nope",))


class TestTheoremGrid:
    def test_shape(self):
        grid = theorem_grid()
        assert grid.shape == (61,)
        assert grid[0] == 0.0
        assert grid[1] == pytest.approx(1e-3)
        assert grid[-1] == pytest.approx(6.0)
        assert np.all(np.diff(grid) > 0)

    def test_default_sweep_grid(self):
        grid = default_sweep_grid()
        assert grid.shape == (101,)
        assert grid[0] == 0.0 and grid[-1] == 5.0


class TestVerifyRandom:
    def test_small_campaign_clean(self):
        report = verify_random(200, seed=123)
        assert report.passed
        assert report.violations == ()
        assert report.conjecture_min_margin >= -1e-9
        assert report.trials == 200
        assert set(report.checks) == {
            "gain_z_nondecreasing",
            "gain_x_nonincreasing",
            "gain_z_below_holevo",
            "uncertainty_margin_nonnegative",
            "complementarity_sum_bound",
            "closed_form_matches_pipeline_z",
            "closed_form_matches_pipeline_x",
        }
        assert all(entry["violations"] == 0 for entry in report.checks.values())
        assert report.checks["gain_z_nondecreasing"]["comparisons"] == 200 * 60

    def test_deterministic_reports(self):
        a = verify_random(100, seed=9)
        b = verify_random(100, seed=9)
        assert a.to_json() == b.to_json()

    def test_parallel_equals_serial(self):
        a = verify_random(100, seed=9)
        b = verify_random(100, seed=9, workers=4)
        assert a.to_json() == b.to_json()

    def test_different_seeds_differ(self):
        assert verify_random(50, seed=1).to_json() != verify_random(50, seed=2).to_json()

    def test_argmin_carries_ensemble(self):
        report = verify_random(50, seed=3)
        argmin = report.conjecture_argmin
        assert {"trial", "g_over_delta", "margin", "ensemble"} <= set(argmin)
        assert argmin["ensemble"]["members"]

    def test_rejects_zero_trials(self):
        with pytest.raises(ValidationError):
            verify_random(0, seed=1)


class TestConjectureScan:
    def test_small_scan(self):
        result = conjecture_scan(300, seed=7)
        assert result.min_margin >= -1e-9
        assert not result.counterexample_found
        assert result.argmin["ensemble"]["members"]

    def test_deterministic(self):
        a = conjecture_scan(100, seed=11)
        b = conjecture_scan(100, seed=11)
        assert a.to_json() == b.to_json()

    def test_single_state_ensembles_sit_at_zero_margin(self):
        # chi = 0 and both gains vanish: margin exactly 0
        from qig.qubit import QubitEnsembleView, gain_x_curve, gain_z_curve
        from qig.qubit import holevo_bound_view
        from qig.states import BlochVector

        view = QubitEnsembleView([(1.0, BlochVector(0.7, 1.0, 2.0), "only")])
        grid = theorem_grid()
        margins = holevo_bound_view(view) - (
            gain_z_curve(view, grid, 1.0) + gain_x_curve(view, grid, 1.0)
        )
        assert np.min(margins) == 0.0

    def test_bb84_margin_is_half(self):
        view = bb84_view()
        from qig.qubit import gain_x_curve, gain_z_curve, holevo_bound_view

        grid = theorem_grid()
        margins = holevo_bound_view(view) - (
            gain_z_curve(view, grid, 1.0) + gain_x_curve(view, grid, 1.0)
        )
        assert np.allclose(margins, 0.5, atol=1e-12)
