"""Shared fixtures and strategies for the test suite."""

from __future__ import annotations

import math

import pytest
from hypothesis import strategies as st

from rsma.rate_model import RsmaParams, SinrPair, sinr_pair_from_db

# The 6 dB / 2 dB working point used throughout the reference sweeps.
GAMMA_S_DB = 6.0
GAMMA_W_DB = 2.0
GAMMA_S = 10.0**0.6
GAMMA_W = 10.0**0.2


@pytest.fixture(scope="session")
def work_sinr() -> SinrPair:
    return sinr_pair_from_db(GAMMA_S_DB, GAMMA_W_DB)


@st.composite
def sinr_pairs(draw, min_gamma: float = 0.05, max_gamma: float = 30.0,
               min_ratio: float = 1.05, max_ratio: float = 50.0) -> SinrPair:
    gamma_w = draw(st.floats(min_value=min_gamma, max_value=max_gamma))
    ratio = draw(st.floats(min_value=min_ratio, max_value=max_ratio))
    return SinrPair(gamma_s=gamma_w * ratio, gamma_w=gamma_w)


@st.composite
def rsma_params(draw, min_edge: float = 0.01, beta_max: float = 1.0) -> RsmaParams:
    unit = st.floats(min_value=min_edge, max_value=1.0 - min_edge)
    return RsmaParams(
        alpha_c=draw(unit),
        lam=draw(unit),
        tau=draw(unit),
        beta=draw(st.floats(min_value=0.0, max_value=beta_max)),
    )


def assert_close(actual: float, expected: float, abs_tol: float, label: str = "") -> None:
    assert math.isfinite(actual), f"{label}: non-finite value {actual!r}"
    assert abs(actual - expected) <= abs_tol, (
        f"{label}: {actual!r} differs from {expected!r} by more than {abs_tol}"
    )
