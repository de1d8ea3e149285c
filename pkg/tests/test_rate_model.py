"""Rate model: SINR maps, rates, conservation and monotonicity properties."""

from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import given, settings

from conftest import GAMMA_S, GAMMA_W, rsma_params, sinr_pairs
from rsma.errors import DegeneratePair, InvalidInput
from rsma.rate_model import (
    LinkBudget,
    RsmaParams,
    SinrPair,
    db_to_linear,
    linear_to_db,
    oma_rate,
    oma_sinr,
    power_split,
    rsma_rates,
    rsma_sinrs,
    rsma_sinrs_from_budget,
    sinr_pair_from_db,
)

mpmath.mp.dps = 50


class TestOmaSinr:
    def test_direct_ratio(self):
        pair = oma_sinr(LinkBudget(p_t=1.0, gain_s=1.0, gain_w=0.5, noise=1.0))
        assert pair.gamma_s == pytest.approx(1.0)
        assert pair.gamma_w == pytest.approx(0.5)

    def test_working_point_from_db(self):
        pair = sinr_pair_from_db(6.0, 2.0)
        assert pair.gamma_s == pytest.approx(GAMMA_S, rel=1e-15)
        assert pair.gamma_w == pytest.approx(GAMMA_W, rel=1e-15)
        assert pair.gamma_s == pytest.approx(3.9811, abs=1e-4)
        assert pair.gamma_w == pytest.approx(1.5849, abs=1e-4)

    def test_interference_arithmetic(self):
        pair = oma_sinr(
            LinkBudget(
                p_t=2.0, gain_s=3.0, gain_w=1.0, noise=1.0,
                interference_s=1.0, interference_w=3.0,
            )
        )
        assert pair.gamma_s == pytest.approx(3.0)
        assert pair.gamma_w == pytest.approx(0.5)

    def test_interference_can_invert_ordering(self):
        with pytest.raises(DegeneratePair):
            oma_sinr(
                LinkBudget(
                    p_t=1.0, gain_s=2.0, gain_w=1.0, noise=1.0,
                    interference_s=3.0, interference_w=1.0,
                )
            )

    def test_equal_gains_degenerate(self):
        with pytest.raises(DegeneratePair):
            oma_sinr(LinkBudget(p_t=1.0, gain_s=1.0, gain_w=1.0, noise=1.0))

    def test_invalid_budget(self):
        with pytest.raises(InvalidInput):
            LinkBudget(p_t=-1.0, gain_s=1.0, gain_w=0.5, noise=1.0)
        with pytest.raises(InvalidInput):
            LinkBudget(p_t=1.0, gain_s=0.5, gain_w=1.0, noise=1.0)
        with pytest.raises(InvalidInput):
            LinkBudget(p_t=1.0, gain_s=1.0, gain_w=0.5, noise=0.0)
        with pytest.raises(InvalidInput):
            LinkBudget(p_t=1.0, gain_s=1.0, gain_w=0.5, noise=1.0, interference_s=-0.1)


class TestOmaRate:
    def test_half_log(self):
        assert oma_rate(3.0) == pytest.approx(1.0)

    def test_zero(self):
        assert oma_rate(0.0) == 0.0

    def test_working_point_high_precision(self):
        expected = float(0.5 * mpmath.log(1 + mpmath.mpf("3.9811"), 2))
        assert oma_rate(3.9811) == pytest.approx(expected, rel=1e-14)
        assert oma_rate(3.9811) == pytest.approx(1.1582, abs=1e-4)

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidInput):
            oma_rate(-0.5)
        with pytest.raises(InvalidInput):
            oma_rate(float("nan"))
        with pytest.raises(InvalidInput):
            oma_rate(float("inf"))

    @given(sinr_pairs())
    @settings(max_examples=50, derandomize=True)
    def test_strictly_increasing(self, pair):
        assert oma_rate(pair.gamma_s) > oma_rate(pair.gamma_w)


class TestRsmaSinrs:
    def test_common_stream_half_power(self):
        pair = SinrPair(gamma_s=1.0, gamma_w=0.5)
        params = RsmaParams(alpha_c=0.5, lam=0.5, tau=0.5, beta=0.0)
        assert rsma_sinrs(pair, params).gamma_cs == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_working_point_high_precision(self, work_sinr):
        params = RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=0.0)
        streams = rsma_sinrs(work_sinr, params)

        gs = mpmath.mpf(10) ** mpmath.mpf("0.6")
        gw = mpmath.mpf(10) ** mpmath.mpf("0.2")
        ac = mpmath.mpf("0.689")
        lam = mpmath.mpf("0.99")
        gps = lam * (1 - ac) * gs / ((1 - lam) * (1 - ac) * gs + 1)
        gcw = ac * gw / ((1 - ac) * gw + 1)
        assert streams.gamma_ps == pytest.approx(float(gps), rel=1e-12)
        assert streams.gamma_cw == pytest.approx(float(gcw), rel=1e-12)
        assert streams.gamma_ps == pytest.approx(1.2107, abs=1e-4)
        assert streams.gamma_cw == pytest.approx(0.7314, abs=1e-4)

    @given(sinr_pairs(), rsma_params())
    @settings(max_examples=100, derandomize=True)
    def test_full_cancellation_failure_matches_direct_form(self, pair, params):
        worst = RsmaParams(alpha_c=params.alpha_c, lam=params.lam, tau=params.tau, beta=1.0)
        streams = rsma_sinrs(pair, worst)
        gs, ac, lam = pair.gamma_s, params.alpha_c, params.lam
        direct = lam * (1 - ac) * gs / (ac * gs + (1 - lam) * (1 - ac) * gs + 1)
        assert streams.gamma_ps == pytest.approx(direct, rel=1e-12)

    @given(sinr_pairs(), rsma_params())
    @settings(max_examples=100, derandomize=True)
    def test_common_sinr_ordering(self, pair, params):
        streams = rsma_sinrs(pair, params)
        assert streams.gamma_cs >= streams.gamma_cw
        assert min(streams.gamma_cs, streams.gamma_cw, streams.gamma_ps, streams.gamma_pw) >= 0.0

    @given(sinr_pairs(), rsma_params(beta_max=0.9))
    @settings(max_examples=100, derandomize=True)
    def test_private_sinrs_decrease_in_beta(self, pair, params):
        higher = RsmaParams(
            alpha_c=params.alpha_c, lam=params.lam, tau=params.tau, beta=params.beta + 0.1
        )
        low = rsma_sinrs(pair, params)
        high = rsma_sinrs(pair, higher)
        assert high.gamma_ps < low.gamma_ps
        assert high.gamma_pw < low.gamma_pw

    @given(sinr_pairs(max_gamma=20.0), rsma_params())
    @settings(max_examples=100, derandomize=True)
    def test_normalised_and_raw_power_routes_agree(self, pair, params):
        budget = LinkBudget(
            p_t=2.5,
            gain_s=pair.gamma_s,
            gain_w=pair.gamma_w,
            noise=2.5,
        )
        normalised = rsma_sinrs(oma_sinr(budget), params)
        raw = rsma_sinrs_from_budget(budget, params)
        for name in ("gamma_cs", "gamma_cw", "gamma_ps", "gamma_pw"):
            a, b = getattr(normalised, name), getattr(raw, name)
            assert a == pytest.approx(b, rel=1e-12), name


class TestPowerSplit:
    @given(rsma_params())
    @settings(max_examples=100, derandomize=True)
    def test_conserves_total_power(self, params):
        for p_t in (1.0, 0.37, 40.0):
            split = power_split(p_t, params)
            total = split.p_c + split.p_ps + split.p_pw
            assert abs(total - p_t) <= 4 * math.ulp(p_t)
            assert min(split.p_c, split.p_ps, split.p_pw) > 0.0

    def test_rejects_nonpositive_budget(self):
        with pytest.raises(InvalidInput):
            power_split(0.0, RsmaParams(alpha_c=0.5, lam=0.5, tau=0.5, beta=0.0))


class TestRsmaRates:
    def test_working_point_beats_baseline(self, work_sinr):
        report = rsma_rates(work_sinr, RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=0.0))
        assert report.r_rsma_s > report.r_oma_s
        assert report.r_rsma_w > report.r_oma_w

    def test_imperfection_strictly_cuts_sum_rate(self, work_sinr):
        clean = rsma_rates(work_sinr, RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=0.0))
        dirty = rsma_rates(work_sinr, RsmaParams(alpha_c=0.689, lam=0.99, tau=0.1, beta=0.1))
        assert dirty.sum_rsma < clean.sum_rsma

    @given(sinr_pairs(), rsma_params())
    @settings(max_examples=150, derandomize=True)
    def test_report_invariants(self, pair, params):
        report = rsma_rates(pair, params)
        # Common rate is the exact minimum; under the enforced ordering it is
        # always the weak user's (the common-SINR map is monotone in gamma).
        assert report.r_comm == min(report.r_comm_s, report.r_comm_w)
        assert report.r_comm == report.r_comm_w
        assert report.r_rsma_s + report.r_rsma_w == pytest.approx(report.sum_rsma, rel=1e-12)
        assert report.sum_oma == pytest.approx(report.r_oma_s + report.r_oma_w, rel=1e-15)
        assert report.sum_rsma == pytest.approx(
            report.r_comm + report.r_priv_s + report.r_priv_w, rel=1e-15
        )
        for name in (
            "r_oma_s", "r_oma_w", "r_comm_s", "r_comm_w", "r_comm",
            "r_priv_s", "r_priv_w", "r_rsma_s", "r_rsma_w", "sum_rsma", "sum_oma",
        ):
            value = getattr(report, name)
            assert math.isfinite(value) and value >= 0.0, name


class TestConversions:
    def test_db_round_trip(self):
        for db in (-20.0, 0.0, 2.0, 6.0, 30.0):
            assert abs(linear_to_db(db_to_linear(db)) - db) < 1e-12

    def test_degenerate_pair_tolerance(self):
        with pytest.raises(DegeneratePair):
            SinrPair(gamma_s=1.0, gamma_w=1.0)
        with pytest.raises(DegeneratePair):
            SinrPair(gamma_s=1.0 + 1e-14, gamma_w=1.0)
        SinrPair(gamma_s=1.0 + 1e-9, gamma_w=1.0)

    def test_params_domain(self):
        with pytest.raises(InvalidInput):
            RsmaParams(alpha_c=0.0, lam=0.5, tau=0.5, beta=0.0)
        with pytest.raises(InvalidInput):
            RsmaParams(alpha_c=0.5, lam=1.0, tau=0.5, beta=0.0)
        with pytest.raises(InvalidInput):
            RsmaParams(alpha_c=0.5, lam=0.5, tau=0.5, beta=1.5)
        RsmaParams(alpha_c=0.5, lam=0.5, tau=0.5, beta=1.0)
