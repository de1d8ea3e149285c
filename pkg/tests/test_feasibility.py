"""Numeric search layer: interval isolation, strict bounds, selection, crossover."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import assert_close, sinr_pairs
from rsma import bounds, feasibility
from rsma.errors import Infeasible, InvalidInput, NoFeasibleLambda
from rsma.oracle import GridSpec, map_region
from rsma.rate_model import RsmaParams, SinrPair, rsma_rates


class TestAlphaInterval:
    def test_working_point_interval(self, work_sinr):
        interval = feasibility.alpha_feasible_interval(work_sinr, 0.99, 0.0)
        assert interval.present
        assert interval.lb == pytest.approx(0.683, abs=2e-3)
        assert interval.ub == pytest.approx(0.776, abs=2e-3)
        assert_close(interval.lb, 0.683514501795, 1e-9, "interval.lb")
        assert_close(interval.ub, 0.775401215348, 1e-8, "interval.ub")
        assert interval.lb == interval.alpha_lb

    def test_endpoint_contract(self, work_sinr):
        interval = feasibility.alpha_feasible_interval(work_sinr, 0.99, 0.0)
        coeffs = bounds.cubic_coeffs(work_sinr, 0.99, 0.0)
        scale = max(abs(coeffs.c3), abs(coeffs.c2), abs(coeffs.c1), abs(coeffs.c0))
        assert abs(float(coeffs.evaluate(interval.ub))) < 1e-8 * scale
        midpoint = 0.5 * (interval.lb + interval.ub)
        assert float(coeffs.evaluate(midpoint)) < 0.0

    def test_absent_below_strict_lambda(self, work_sinr):
        interval = feasibility.alpha_feasible_interval(work_sinr, 0.80, 0.0)
        assert not interval.present
        assert interval.lb is None and interval.ub is None
        assert interval.width == 0.0

    def test_present_and_narrower_at_090(self, work_sinr):
        at_090 = feasibility.alpha_feasible_interval(work_sinr, 0.90, 0.0)
        at_099 = feasibility.alpha_feasible_interval(work_sinr, 0.99, 0.0)
        assert at_090.present
        assert at_090.width < at_099.width

    def test_endpoints_match_grid_oracle_at_090(self, work_sinr):
        interval = feasibility.alpha_feasible_interval(work_sinr, 0.90, 0.0)
        report = map_region(
            work_sinr,
            GridSpec(
                lambda_range=(0.90, 0.901, 0.001),
                alpha_range=(0.001, 1.0, 0.001),
                tau_range=(0.001, 1.0, 0.001),
            ),
        )
        span = report.alpha_span_at(0.90)
        assert span is not None
        assert span[0] == pytest.approx(interval.lb, abs=2e-3)
        assert span[1] == pytest.approx(interval.ub, abs=2e-3)


class TestAlphaBoundsAssembly:
    def test_all_three_bounds_at_working_point(self, work_sinr):
        assembled = feasibility.alpha_bounds_at(work_sinr, 0.99, 0.0)
        assert assembled.lower == pytest.approx(0.683, abs=2e-3)
        assert assembled.strict_upper == pytest.approx(0.776, abs=2e-3)
        assert assembled.soft_upper >= 1.0
        assert 0.0 < assembled.lower < assembled.strict_upper < 1.0

    def test_strict_upper_absent_below_threshold(self, work_sinr):
        assembled = feasibility.alpha_bounds_at(work_sinr, 0.80, 0.0)
        assert assembled.strict_upper is None
        assert 0.0 < assembled.lower < 1.0


class TestLambdaStrictLower:
    def test_working_point(self, work_sinr):
        strict = feasibility.lambda_strict_lower(work_sinr, 0.0)
        assert strict == pytest.approx(0.865, abs=2e-3)

    def test_frontier_behaviour(self, work_sinr):
        strict = feasibility.lambda_strict_lower(work_sinr, 0.0)
        assert not feasibility.alpha_feasible_interval(work_sinr, strict - 1e-4, 0.0).present
        assert feasibility.alpha_feasible_interval(work_sinr, strict + 1e-4, 0.0).present

    def test_at_least_soft_bound(self, work_sinr):
        strict = feasibility.lambda_strict_lower(work_sinr, 0.0)
        assert strict >= bounds.lambda_soft_lower(work_sinr, 0.0).soft_lower

    def test_monotone_validation_passes(self, work_sinr):
        with_check = feasibility.lambda_strict_lower(work_sinr, 0.0, validate_monotone=True)
        without = feasibility.lambda_strict_lower(work_sinr, 0.0)
        assert with_check == without

    def test_imperfection_kills_feasibility(self, work_sinr):
        # At this working point even 20% residual common power is too much:
        # the search must fail, and the brute-force map must agree that the
        # region is empty.
        with pytest.raises(NoFeasibleLambda):
            feasibility.lambda_strict_lower(work_sinr, 0.2)
        report = map_region(work_sinr, GridSpec.with_step(0.005, beta=0.2))
        assert report.feasible_count == 0
        assert report.needs_common_count == 0

    def test_full_cancellation_failure_is_infeasible(self, work_sinr):
        with pytest.raises(NoFeasibleLambda):
            feasibility.lambda_strict_lower(work_sinr, 1.0)
        report = map_region(work_sinr, GridSpec.with_step(0.02, beta=1.0))
        assert report.feasible_count == 0
        assert report.empirical_lambda_min() is None


class TestSelectParams:
    def test_defaults_beat_baselines(self, work_sinr):
        chosen = feasibility.select_params(work_sinr, 0.0)
        assert chosen.report.r_rsma_s > chosen.report.r_oma_s
        assert chosen.report.r_rsma_w > chosen.report.r_oma_w
        assert chosen.lambda_strict_lower == pytest.approx(0.865, abs=2e-3)
        assert chosen.lambda_strict_lower < chosen.params.lam < 1.0
        assert chosen.alpha_interval.lb < chosen.params.alpha_c < chosen.alpha_interval.ub
        lo, hi = chosen.tau_bounds.window
        assert lo < chosen.params.tau < hi

    def test_policy_pins_reference_operating_point(self, work_sinr):
        # Recover lam = 0.99, alpha_c = 0.689, tau = 0.1 through the policy's
        # relative positions, then confirm the report matches a direct
        # evaluation at that configuration.
        strict = feasibility.lambda_strict_lower(work_sinr, 0.0)
        lam = 0.99
        interval = feasibility.alpha_feasible_interval(work_sinr, lam, 0.0)
        tb = bounds.tau_bounds(work_sinr, 0.689, lam, 0.0)
        lo, hi = tb.window
        policy = feasibility.SelectionPolicy(
            lambda_offset=(lam - strict) / (1.0 - strict),
            alpha_position=(0.689 - interval.lb) / (interval.ub - interval.lb),
            tau_position=(0.1 - lo) / (hi - lo),
        )
        chosen = feasibility.select_params(work_sinr, 0.0, policy)
        assert chosen.params.lam == pytest.approx(0.99, abs=1e-12)
        assert chosen.params.alpha_c == pytest.approx(0.689, abs=1e-9)
        assert chosen.params.tau == pytest.approx(0.1, abs=1e-9)
        direct = rsma_rates(work_sinr, RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=0.0))
        assert chosen.report.r_rsma_s == pytest.approx(direct.r_rsma_s, rel=1e-9)
        assert chosen.report.r_rsma_w == pytest.approx(direct.r_rsma_w, rel=1e-9)

    def test_infeasible_beta_propagates(self, work_sinr):
        with pytest.raises(NoFeasibleLambda):
            feasibility.select_params(work_sinr, 1.0)

    def test_pinned_lambda_below_threshold_is_infeasible(self, work_sinr):
        with pytest.raises(Infeasible):
            feasibility.select_at_lambda(work_sinr, 0.80, 0.0)

    @given(sinr_pairs(min_gamma=0.3, max_gamma=12.0, min_ratio=1.5, max_ratio=20.0))
    @settings(max_examples=25, deadline=None, derandomize=True)
    def test_selection_soundness_sample(self, pair):
        for beta in (0.0, 0.02):
            try:
                chosen = feasibility.select_params(pair, beta)
            except NoFeasibleLambda:
                continue
            assert chosen.report.r_rsma_s > chosen.report.r_oma_s
            assert chosen.report.r_rsma_w > chosen.report.r_oma_w

    def test_policy_domain(self):
        with pytest.raises(InvalidInput):
            feasibility.SelectionPolicy(lambda_offset=0.0)
        with pytest.raises(InvalidInput):
            feasibility.SelectionPolicy(tau_position=1.0)


class TestBetaCrossover:
    def test_working_point(self, work_sinr):
        crossover = feasibility.beta_crossover(work_sinr, 0.689, 0.99, 0.1)
        assert crossover == pytest.approx(0.035, abs=3e-3)
        assert_close(crossover, 0.0325514, 2e-5, "beta_crossover")
        report = rsma_rates(
            work_sinr, RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=crossover)
        )
        assert abs(report.r_rsma_s - report.r_oma_s) < 1e-6

    def test_larger_share_delays_crossover(self, work_sinr):
        # More common rate credited to the strong user buys margin against
        # cancellation residue.
        low = feasibility.beta_crossover(work_sinr, 0.689, 0.99, 0.1)
        high = feasibility.beta_crossover(work_sinr, 0.689, 0.99, 0.13)
        assert high > low

    def test_already_failing_returns_zero(self, work_sinr):
        lower = bounds.tau_lower(work_sinr, 0.689, 0.99, 0.0)
        assert feasibility.beta_crossover(work_sinr, 0.689, 0.99, 0.5 * lower) == 0.0

    def test_never_crossing_returns_one(self):
        # A hugely asymmetric pair with nearly all power private at the
        # strong user survives even total cancellation failure.
        pair = SinrPair(gamma_s=200.0, gamma_w=0.1)
        assert feasibility.beta_crossover(pair, 0.01, 0.99, 0.9) == 1.0
