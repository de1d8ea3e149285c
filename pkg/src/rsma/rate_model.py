"""Rate model for a two-user downlink pair: orthogonal baseline vs. one-layer rate splitting.

The pair consists of a strong user ``s`` and a weak user ``w`` ordered by
channel quality. Under the orthogonal baseline each user gets half the
resource, so its rate carries a 1/2 pre-log factor. Under rate splitting the
transmitter superimposes a common stream (decoded by both users) and two
private streams; the receivers cancel the common stream before decoding
their private one, and a coefficient ``beta`` in [0, 1] scales the residual
common power left by imperfect cancellation (0 = perfect, 1 = no
cancellation at all).

Power is parameterised by three fractions:

* ``alpha_c``: share of the total transmit power given to the common stream,
* ``lam``:     share of the remaining power given to the strong user's
               private stream (the weak user gets the rest),
* ``tau``:     share of the achievable common rate credited to the strong
               user (the weak user is credited with ``1 - tau``).

All SINRs here are linear (not dB) and all rates are in bits/s/Hz. dB values
are converted at I/O boundaries only, as ``linear = 10**(dB/10)``.

Every function is pure and operates on immutable values, so the module is
safe to use from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneratePair, InvalidInput

# Relative gap below which two SINRs are treated as equal (degenerate pair).
DEGENERATE_REL_TOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise InvalidInput(f"{name} must be finite, got {value!r}")
    return float(value)


def _require_positive(name: str, value: float) -> float:
    _require_finite(name, value)
    if value <= 0.0:
        raise InvalidInput(f"{name} must be > 0, got {value!r}")
    return float(value)


def _require_nonnegative(name: str, value: float) -> float:
    _require_finite(name, value)
    if value < 0.0:
        raise InvalidInput(f"{name} must be >= 0, got {value!r}")
    return float(value)


def _require_open_unit(name: str, value: float) -> float:
    _require_finite(name, value)
    if not 0.0 < value < 1.0:
        raise InvalidInput(f"{name} must lie in the open interval (0, 1), got {value!r}")
    return float(value)


@dataclass(frozen=True)
class LinkBudget:
    """Physical-layer inputs that map to the two users' SINRs.

    Attributes:
        p_t: total transmit power in watts (> 0).
        gain_s: channel power gain of the strong user (dimensionless, > 0).
        gain_w: channel power gain of the weak user (dimensionless, > 0),
            must not exceed ``gain_s``.
        noise: noise variance in watts (> 0).
        interference_s: aggregate interference power at the strong user (>= 0).
        interference_w: aggregate interference power at the weak user (>= 0).
    """

    p_t: float
    gain_s: float
    gain_w: float
    noise: float
    interference_s: float = 0.0
    interference_w: float = 0.0

    def __post_init__(self) -> None:
        _require_positive("p_t", self.p_t)
        _require_positive("gain_s", self.gain_s)
        _require_positive("gain_w", self.gain_w)
        _require_positive("noise", self.noise)
        _require_nonnegative("interference_s", self.interference_s)
        _require_nonnegative("interference_w", self.interference_w)
        if self.gain_s < self.gain_w:
            raise InvalidInput(
                f"strong/weak ordering violated: gain_s={self.gain_s!r} < gain_w={self.gain_w!r}"
            )


@dataclass(frozen=True)
class SinrPair:
    """Ordered linear SINRs of the strong and weak user.

    The strict ordering ``gamma_s > gamma_w > 0`` is the coordinate system
    for every bound downstream; pairs equal within ``DEGENERATE_REL_TOL``
    are rejected.
    """

    gamma_s: float
    gamma_w: float

    def __post_init__(self) -> None:
        _require_positive("gamma_s", self.gamma_s)
        _require_positive("gamma_w", self.gamma_w)
        if self.gamma_s - self.gamma_w <= DEGENERATE_REL_TOL * self.gamma_s:
            raise DegeneratePair(
                f"gamma_s={self.gamma_s!r} does not strictly exceed gamma_w={self.gamma_w!r}"
            )


@dataclass(frozen=True)
class RsmaParams:
    """Decision variables of the rate-splitting configuration.

    ``alpha_c``, ``lam`` and ``tau`` live in the open interval (0, 1);
    ``beta`` (the cancellation-imperfection coefficient) in the closed
    interval [0, 1].
    """

    alpha_c: float
    lam: float
    tau: float
    beta: float = 0.0

    def __post_init__(self) -> None:
        _require_open_unit("alpha_c", self.alpha_c)
        _require_open_unit("lam", self.lam)
        _require_open_unit("tau", self.tau)
        _require_finite("beta", self.beta)
        if not 0.0 <= self.beta <= 1.0:
            raise InvalidInput(f"beta must lie in [0, 1], got {self.beta!r}")


@dataclass(frozen=True)
class PowerSplit:
    """Absolute stream powers implied by the power fractions.

    ``p_c + p_ps + p_pw`` equals the total transmit power exactly (the
    power budget is met with equality under this parameterisation).
    """

    p_c: float
    p_ps: float
    p_pw: float


@dataclass(frozen=True)
class RsmaSinrs:
    """Per-stream SINRs: common and private, at each user."""

    gamma_cs: float
    gamma_cw: float
    gamma_ps: float
    gamma_pw: float


@dataclass(frozen=True)
class RateReport:
    """All rates of one configuration, orthogonal baseline and rate splitting.

    Invariants (up to floating rounding): ``r_comm`` is the exact minimum of
    the two common-stream rates, ``sum_rsma = r_comm + r_priv_s + r_priv_w``,
    ``r_rsma_s + r_rsma_w = sum_rsma`` and ``sum_oma = r_oma_s + r_oma_w``.
    """

    r_oma_s: float
    r_oma_w: float
    r_comm_s: float
    r_comm_w: float
    r_comm: float
    r_priv_s: float
    r_priv_w: float
    r_rsma_s: float
    r_rsma_w: float
    sum_rsma: float
    sum_oma: float


def oma_sinr(budget: LinkBudget) -> SinrPair:
    """Map a link budget to the ordered SINR pair.

    Each user's SINR is transmit power times channel gain over noise plus
    interference. Interference can invert the gain ordering, in which case
    the resulting pair is degenerate and rejected.
    """
    gamma_s = budget.p_t * budget.gain_s / (budget.noise + budget.interference_s)
    gamma_w = budget.p_t * budget.gain_w / (budget.noise + budget.interference_w)
    if gamma_s - gamma_w <= DEGENERATE_REL_TOL * abs(gamma_s):
        raise DegeneratePair(
            f"computed SINRs are not strictly ordered: gamma_s={gamma_s!r}, gamma_w={gamma_w!r}"
        )
    return SinrPair(gamma_s=gamma_s, gamma_w=gamma_w)


def oma_rate(gamma: float) -> float:
    """Orthogonal-baseline rate 0.5 * log2(1 + gamma) in bits/s/Hz.

    The 1/2 pre-log models the orthogonal resource split between the two
    users; rate-splitting rates carry no such factor.
    """
    _require_finite("gamma", gamma)
    if gamma < 0.0:
        raise InvalidInput(f"gamma must be >= 0, got {gamma!r}")
    return 0.5 * math.log2(1.0 + gamma)


def power_split(p_t: float, params: RsmaParams) -> PowerSplit:
    """Absolute stream powers for a total budget ``p_t``."""
    _require_positive("p_t", p_t)
    p_c = params.alpha_c * p_t
    remaining = p_t - p_c
    return PowerSplit(
        p_c=p_c,
        p_ps=params.lam * remaining,
        p_pw=(1.0 - params.lam) * remaining,
    )


def rsma_sinrs(sinr: SinrPair, params: RsmaParams) -> RsmaSinrs:
    """Per-stream SINRs in the normalised form.

    Dividing numerator and denominator of each raw-power SINR by the total
    transmit power leaves only the fractions and the users' baseline SINRs:

        gamma_cx = alpha_c*gamma_x / ((1-alpha_c)*gamma_x + 1)
        gamma_ps = lam*(1-alpha_c)*gamma_s
                   / (beta*alpha_c*gamma_s + (1-lam)*(1-alpha_c)*gamma_s + 1)
        gamma_pw = (1-lam)*(1-alpha_c)*gamma_w
                   / (beta*alpha_c*gamma_w + lam*(1-alpha_c)*gamma_w + 1)

    The residual common power ``beta*alpha_c`` appears as interference to
    both private streams.
    """
    gs, gw = sinr.gamma_s, sinr.gamma_w
    ac, lam, beta = params.alpha_c, params.lam, params.beta
    rem = 1.0 - ac
    gamma_cs = ac * gs / (rem * gs + 1.0)
    gamma_cw = ac * gw / (rem * gw + 1.0)
    gamma_ps = lam * rem * gs / (beta * ac * gs + (1.0 - lam) * rem * gs + 1.0)
    gamma_pw = (1.0 - lam) * rem * gw / (beta * ac * gw + lam * rem * gw + 1.0)
    return RsmaSinrs(gamma_cs=gamma_cs, gamma_cw=gamma_cw, gamma_ps=gamma_ps, gamma_pw=gamma_pw)


def rsma_sinrs_from_budget(budget: LinkBudget, params: RsmaParams) -> RsmaSinrs:
    """Per-stream SINRs computed from raw powers instead of the normalised form.

    Agrees with :func:`rsma_sinrs` applied to ``oma_sinr(budget)`` to within
    floating rounding; kept as an independent evaluation path.
    """
    split = power_split(budget.p_t, params)
    noise_s = budget.noise + budget.interference_s
    noise_w = budget.noise + budget.interference_w
    gamma_cs = split.p_c * budget.gain_s / ((split.p_ps + split.p_pw) * budget.gain_s + noise_s)
    gamma_cw = split.p_c * budget.gain_w / ((split.p_ps + split.p_pw) * budget.gain_w + noise_w)
    gamma_ps = split.p_ps * budget.gain_s / (
        params.beta * split.p_c * budget.gain_s + split.p_pw * budget.gain_s + noise_s
    )
    gamma_pw = split.p_pw * budget.gain_w / (
        params.beta * split.p_c * budget.gain_w + split.p_ps * budget.gain_w + noise_w
    )
    return RsmaSinrs(gamma_cs=gamma_cs, gamma_cw=gamma_cw, gamma_ps=gamma_ps, gamma_pw=gamma_pw)


def rsma_rates(sinr: SinrPair, params: RsmaParams) -> RateReport:
    """Full rate report for one configuration.

    The achievable common rate is the exact minimum of the two users'
    common-stream rates (under the enforced SINR ordering this is always the
    weak user's). The strong user is credited ``tau`` of it, the weak user
    the remainder, each on top of its private rate.
    """
    streams = rsma_sinrs(sinr, params)
    r_comm_s = math.log2(1.0 + streams.gamma_cs)
    r_comm_w = math.log2(1.0 + streams.gamma_cw)
    r_comm = min(r_comm_s, r_comm_w)
    r_priv_s = math.log2(1.0 + streams.gamma_ps)
    r_priv_w = math.log2(1.0 + streams.gamma_pw)
    r_rsma_s = params.tau * r_comm + r_priv_s
    r_rsma_w = (1.0 - params.tau) * r_comm + r_priv_w
    r_oma_s = oma_rate(sinr.gamma_s)
    r_oma_w = oma_rate(sinr.gamma_w)
    return RateReport(
        r_oma_s=r_oma_s,
        r_oma_w=r_oma_w,
        r_comm_s=r_comm_s,
        r_comm_w=r_comm_w,
        r_comm=r_comm,
        r_priv_s=r_priv_s,
        r_priv_w=r_priv_w,
        r_rsma_s=r_rsma_s,
        r_rsma_w=r_rsma_w,
        sum_rsma=r_comm + r_priv_s + r_priv_w,
        sum_oma=r_oma_s + r_oma_w,
    )


def db_to_linear(db: float) -> float:
    """dB to linear power ratio."""
    _require_finite("db", db)
    return 10.0 ** (db / 10.0)


def linear_to_db(linear: float) -> float:
    """Linear power ratio to dB."""
    _require_positive("linear", linear)
    return 10.0 * math.log10(linear)


def sinr_pair_from_db(gamma_s_db: float, gamma_w_db: float) -> SinrPair:
    """Construct the ordered SINR pair from dB values."""
    return SinrPair(gamma_s=db_to_linear(gamma_s_db), gamma_w=db_to_linear(gamma_w_db))
