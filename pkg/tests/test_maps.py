import numpy as np
import pytest

from nimetrics import (
    ConfusionMatrix,
    InvariantViolationError,
    NICase,
    boundary_curves,
    case5_matrix,
    case6_matrix,
    case7_matrix,
    case8_matrix,
    envelope_scatter,
    feasible_region_pr,
    ni_from_counts,
    ni_from_pr,
    pr_region_contains,
    special_points,
    surface_fr,
    surface_pr,
)
from nimetrics.maps import (
    acc_upper_bound,
    beta_a_ordinate,
    beta_r_ordinate,
    check_envelopes,
    check_pr_region,
    enumerate_confusions,
    junction_gaps,
    pr_integer_points,
    pr_region_mask,
    pre_upper_bound,
    rec_upper_bound,
)

SIZE_PAIRS = [(50, 50), (60, 40), (75, 25), (18, 13)]


def _points_by_name(points):
    return {p.name: p for p in points}


class TestSpecialPoints:
    def test_acc_map_balanced(self):
        pts = _points_by_name(special_points("acc", 50, 50))
        assert set(pts) == {"alpha_A", "beta_A", "gamma_A", "eta_A", "lambda_A"}
        assert (pts["alpha_A"].x, pts["alpha_A"].y) == (0.0, 1.0)
        assert (pts["gamma_A"].x, pts["gamma_A"].y) == (1.0, 1.0)
        assert pts["eta_A"] == pts["eta_A"].__class__("eta_A", 0.5, 0.0)
        assert pts["lambda_A"].x == 0.5
        assert pts["beta_A"].y == pytest.approx(0.0, abs=1e-12)
        assert pts["beta_A"].feasible

    def test_acc_beta_formal_for_unbalanced(self):
        pts = _points_by_name(special_points("acc", 60, 40))
        # frozen from the closed expression at 50-digit precision
        assert pts["beta_A"].y == pytest.approx(-0.12614713752636966, abs=1e-12)
        assert not pts["beta_A"].feasible
        assert pts["eta_A"].x == pytest.approx(0.4)
        assert pts["lambda_A"].x == pytest.approx(0.6)

    def test_pre_map(self):
        pts = _points_by_name(special_points("pre", 60, 40))
        assert pts["beta_P"].x == pytest.approx(0.6)
        assert pts["beta_P"].y == 0.0
        assert (pts["alpha_P"].y, pts["gamma_P"].y) == (1.0, 1.0)

    def test_rec_map(self):
        pts = _points_by_name(special_points("rec", 50, 50))
        assert pts["beta_R"].x == 0.5
        # frozen: NI of (25, 0, 50, 25) at 50-digit precision
        assert pts["beta_R"].y == pytest.approx(0.31127812445913286, abs=1e-12)

    def test_size_order_enforced(self):
        with pytest.raises(ValueError, match="w1 >= w2"):
            special_points("acc", 40, 60)
        pts = _points_by_name(special_points("acc", 40, 60, swap=True))
        assert pts["eta_A"].x == pytest.approx(0.4)

    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_beta_ordinates_match_curve_forms(self, w1, w2):
        from nimetrics.closedform import case5_form_a, case6_form_r

        assert beta_a_ordinate(w1, w2) == pytest.approx(
            case5_form_a(0.5, w1, w2), abs=1e-12
        )
        assert beta_r_ordinate(w1, w2) == pytest.approx(
            case6_form_r(0.5, w1, w2), abs=1e-12
        )

    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_junction_gaps_tiny(self, w1, w2):
        for gap in junction_gaps(w1, w2).values():
            assert gap < 1e-12


class TestBoundaryCurves:
    def test_acc_curve_set(self):
        curves = {c.name: c for c in boundary_curves("acc", 50, 50, 51)}
        assert set(curves) == {
            "Gamma_alphaA_betaA", "Gamma_gammaA_betaA",
            "Gamma_alphaA_etaA", "Gamma_gammaA_lambdaA",
        }
        assert curves["Gamma_alphaA_betaA"].case is NICase.CASE_5
        assert curves["Gamma_gammaA_betaA"].case is NICase.CASE_8
        assert curves["Gamma_alphaA_etaA"].case is NICase.CASE_6
        assert curves["Gamma_gammaA_lambdaA"].case is NICase.CASE_7

    def test_rec_curve_set(self):
        curves = {c.name: c for c in boundary_curves("rec", 60, 40, 51)}
        assert set(curves) == {"Gamma_alphaR_betaR", "Gamma_gammaR_betaR"}
        assert curves["Gamma_alphaR_betaR"].domain == (0.0, 0.5)

    def test_pre_curve_set(self):
        curves = {c.name: c for c in boundary_curves("pre", 60, 40, 51)}
        assert curves["Gamma_alphaP_betaP"].domain == (0.0, 0.6)
        assert curves["Gamma_gammaP_betaP"].domain == (0.6, 1.0)

    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_samples_monotone_and_bounded(self, w1, w2):
        for map_name in ("acc", "pre", "rec"):
            for curve in boundary_curves(map_name, w1, w2, 101):
                assert (np.diff(curve.x) > 0).all()
                assert ((curve.y >= 0.0) & (curve.y <= 1.0)).all()

    def test_observed_domain_narrower_when_unbalanced(self):
        curves = {c.name: c for c in boundary_curves("acc", 75, 25, 11)}
        five = curves["Gamma_alphaA_betaA"]
        assert five.domain == (0.0, 0.25)
        assert five.annotated_domain == (0.0, 0.5)
        assert five.note  # discrepancy is called out
        eight = curves["Gamma_gammaA_betaA"]
        assert eight.domain == (0.75, 1.0)

    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_every_sample_reproducible_from_counts(self, w1, w2):
        s = w1 + w2
        reconstruct = {
            NICase.CASE_5: lambda a: case5_matrix(a, w1, w2),
            NICase.CASE_6: lambda a: case6_matrix(a * s / w1, w1, w2),
            NICase.CASE_7: lambda a: case7_matrix((a * s - w2) / w1, w1, w2),
            NICase.CASE_8: lambda a: case8_matrix(w1 / (2 * w1 + w2 - a * s), w1, w2),
        }
        for curve in boundary_curves("acc", w1, w2, 41):
            rebuild = reconstruct[curve.case]
            for x, y in zip(curve.x, curve.y):
                lo, hi = curve.domain
                if not (lo < x < hi):
                    continue  # closed endpoints touch neighboring cases
                assert y == pytest.approx(
                    ni_from_counts(rebuild(float(x))), abs=1e-12
                )

    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_rec_and_pre_samples_reproducible(self, w1, w2):
        for curve in boundary_curves("rec", w1, w2, 41):
            rebuild = case6_matrix if curve.case is NICase.CASE_6 else case7_matrix
            for x, y in zip(curve.x, curve.y):
                if 0.0 < x < 1.0:
                    assert y == pytest.approx(
                        ni_from_counts(rebuild(float(x), w1, w2)), abs=1e-12
                    )
        s = w1 + w2
        for curve in boundary_curves("pre", w1, w2, 41):
            for x, y in zip(curve.x, curve.y):
                lo, hi = curve.domain
                if not (lo < x < hi):
                    continue
                if curve.case is NICase.CASE_6:
                    cm = case6_matrix(float(x) * w2 / ((1 - float(x)) * w1), w1, w2)
                else:
                    cm = case8_matrix(float(x), w1, w2)
                assert y == pytest.approx(ni_from_counts(cm), abs=1e-12)


class TestUpperBounds:
    @pytest.mark.parametrize("w1,w2", SIZE_PAIRS)
    def test_bounds_match_endpoint_matrices(self, w1, w2, rng):
        s = w1 + w2
        for _ in range(50):
            a = float(rng.uniform(0.02, 0.98))
            cells = a * s
            tp_lo = max(0.0, cells - w2)
            tp_hi = min(float(w1), cells)
            expected = max(
                ni_from_counts(
                    ConfusionMatrix(tp_lo, w2 - (cells - tp_lo), cells - tp_lo, w1 - tp_lo)
                ),
                ni_from_counts(
                    ConfusionMatrix(tp_hi, w2 - (cells - tp_hi), cells - tp_hi, w1 - tp_hi)
                ),
            )
            assert acc_upper_bound(a, w1, w2) == pytest.approx(expected, abs=1e-12)

            r = float(rng.uniform(0.02, 0.98))
            expected = max(
                ni_from_counts(case6_matrix(r, w1, w2)),
                ni_from_counts(case7_matrix(r, w1, w2)),
            )
            assert rec_upper_bound(r, w1, w2) == pytest.approx(expected, abs=1e-12)

            p = float(rng.uniform(0.02, 0.98))
            if p * s <= w1:
                cm = case6_matrix(p * w2 / ((1 - p) * w1), w1, w2)
            else:
                cm = case8_matrix(p, w1, w2)
            assert pre_upper_bound(p, w1, w2) == pytest.approx(
                ni_from_counts(cm), abs=1e-12
            )


class TestEnvelopeScatter:
    def test_point_count_small(self):
        scatter = envelope_scatter("acc", 5, 5)
        assert scatter.n_points == 36

    def test_reference_models_inside_balanced_envelope(self, table2_matrices):
        for metric in ("acc", "pre", "rec"):
            scatter = envelope_scatter(metric, 50, 50)  # checks internally
            assert (scatter.ni <= scatter.upper + 1e-9).all()
        for name, cm in table2_matrices.items():
            ni = ni_from_counts(cm)
            assert ni <= acc_upper_bound((cm.tp + cm.tn) / 100.0, 50, 50) + 1e-9
            assert ni <= rec_upper_bound(cm.tp / 50.0, 50, 50) + 1e-9
            assert ni <= pre_upper_bound(cm.tp / (cm.tp + cm.fp), 50, 50) + 1e-9

    def test_cap_enforced(self):
        with pytest.raises(ValueError, match="cap"):
            envelope_scatter("acc", 150, 150, cap=200)

    def test_sweep_runs_clean(self):
        summary = check_envelopes(24)
        assert summary["max_violation_acc"] <= 1e-9
        assert summary["min_ni"] >= -1e-9

    def test_violation_detected(self):
        # endpoint matrices sit exactly on the bound, so a negative
        # tolerance must trip the checker
        with pytest.raises(InvariantViolationError):
            envelope_scatter("acc", 6, 6, tol=-1.0)


class TestFeasibleRegion:
    def test_apex_and_curves(self):
        apex, curves = feasible_region_pr(50, 50, 21)
        assert (apex.x, apex.y) == (0.5, 1.0)
        names = {c.name: c for c in curves}
        assert set(names) == {"Gamma_alphaRP1", "Gamma_alphaRP2"}
        # r = p*w2/((1-p)*w1) at p = 0.5 with equal classes reaches 1
        c1 = names["Gamma_alphaRP1"]
        assert c1.x[-1] == pytest.approx(0.5)
        assert c1.y[-1] == pytest.approx(1.0)
        assert "= w2" in c1.note or "w2" in c1.note
        assert "= 1" in names["Gamma_alphaRP2"].note

    def test_curves_follow_their_count_constraints(self):
        _, curves = feasible_region_pr(60, 40, 31)
        for c in curves:
            fp_value = 40.0 if c.name.endswith("RP1") else 1.0
            for p, r in zip(c.x, c.y):
                if p <= 0 or p >= 1:
                    continue
                # r*w1*(1-p)/p is the implied false-positive count
                assert r * 60 * (1 - p) / p == pytest.approx(fp_value, rel=1e-9)

    def test_membership(self):
        assert pr_region_contains(0.8, 0.5, 50, 50)
        assert not pr_region_contains(0.1, 0.9, 50, 50)
        assert pr_region_contains(1.0, 1.0, 50, 50)

    def test_integer_points_inside_region(self):
        for w1, w2 in [(5, 5), (9, 4), (12, 12)]:
            p, r = pr_integer_points(w1, w2)
            for pi, ri in zip(p, r):
                assert pr_region_contains(float(pi), float(ri), w1, w2)
                if pi < 1.0:
                    # integer matrices with any false positive have fp >= 1
                    assert ri >= pi / ((1 - pi) * w1) - 1e-12

    def test_region_sweep_runs_clean(self):
        summary = check_pr_region(40)
        assert summary["max_outside_region"] <= 1e-9
        assert summary["max_below_fp1_locus"] <= 1e-9


class TestSurfaces:
    def test_pr_corner_and_agreement(self):
        grid = surface_pr(50, 50, 21, 21, mode="actual")
        assert grid.values[-1, -1] == pytest.approx(1.0, abs=1e-12)  # (p, r) = (1, 1)
        for i in (5, 10, 15, 20):
            for j in (4, 8, 16):
                if grid.defined[i, j]:
                    assert grid.values[i, j] == pytest.approx(
                        ni_from_pr(float(grid.x[i]), float(grid.y[j]), 50, 50),
                        abs=1e-12,
                    )

    def test_pr_actual_mask_matches_region_oracle(self):
        for w1, w2 in [(50.0, 50.0), (60.0, 40.0), (75.0, 25.0)]:
            grid = surface_pr(w1, w2, 41, 41, mode="actual")
            oracle = pr_region_mask(grid.x[:, None], grid.y[None, :], w1, w2)
            assert (grid.defined == oracle).all()
            assert np.isnan(grid.values[~grid.defined]).all()

    def test_pr_ideal_contains_actual(self):
        ideal = surface_pr(60, 40, 41, 41, mode="ideal")
        actual = surface_pr(60, 40, 41, 41, mode="actual")
        assert (ideal.defined | ~actual.defined).all()

    def test_pr_infeasible_cells_marked(self):
        grid = surface_pr(50, 50, 41, 41, mode="actual")
        # low precision with high recall implies fp > w2
        assert not grid.defined[4, 36]  # p = 0.1, r = 0.9
        assert np.isnan(grid.values[4, 36])

    def test_fr_diagonal_zero(self):
        grid = surface_fr(50, 50, 41, 41)
        assert np.abs(np.diagonal(grid.values)).max() <= 1e-12

    def test_fr_flip_symmetry(self):
        grid = surface_fr(60, 40, 41, 41)
        assert np.nanmax(np.abs(grid.values - grid.values[::-1, ::-1])) <= 1e-12

    def test_fr_perfect_corner(self):
        grid = surface_fr(50, 50, 21, 21)
        assert grid.values[0, -1] == pytest.approx(1.0, abs=1e-12)  # (f, r) = (0, 1)
        assert grid.defined.all()

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            surface_pr(50, 50, 1, 10)
        with pytest.raises(ValueError):
            surface_fr(50, 50, 10, 1)
        with pytest.raises(ValueError):
            surface_pr(50, 50, 10, 10, mode="upside-down")


class TestEnumeration:
    def test_enumerate_confusions_counts(self):
        tp, fp, tn, fn = enumerate_confusions(4, 3)
        assert tp.size == 5 * 4
        assert ((tp + fn) == 4).all()
        assert ((fp + tn) == 3).all()

    def test_enumerate_validates(self):
        with pytest.raises(ValueError):
            enumerate_confusions(0, 3)
