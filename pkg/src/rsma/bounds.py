"""Closed-form bounds on the rate-splitting fractions.

For fixed user SINRs and cancellation imperfection ``beta``, each user's
rate-splitting rate exceeds its orthogonal baseline exactly when the common
rate share ``tau`` lies between two closed-form thresholds that depend on
``alpha_c`` and ``lam``:

* :func:`tau_lower`  is the share below which the strong user falls behind
  its baseline;
* :func:`tau_upper`  is the share above which the weak user falls behind.

Requiring the window to be usable yields secondary bounds on the power
fractions:

* :func:`alpha_lower` is the common-power fraction above which the strong
  user strictly needs the common stream (equivalently: tau_lower > 0);
* :func:`alpha_soft_upper` is the analogous weak-user expression; it is
  *not* a strict bound (it is >= 1 whenever its denominator is positive)
  and is exposed for completeness only;
* :func:`cubic_coeffs` gives the cubic polynomial in ``alpha_c`` whose
  negativity is equivalent to ``tau_lower < tau_upper``;
* :func:`lambda_soft_lower` collects the four necessary (non-strict)
  lower bounds on ``lam`` obtained from sign constraints on the
  ``alpha_c`` bounds.

Out-of-range values (tau bounds outside (0, 1), the soft upper bound
above 1) are returned raw, never clamped; feasibility is a separate
predicate. Near-singular denominators raise :class:`NumericalDomain`
instead of returning infinities.

``tau_lower`` and ``tau_upper`` accept a scalar or an ndarray for
``alpha_c`` and evaluate elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DenominatorSignViolation, InternalContractViolation, InvalidInput, NumericalDomain
from .rate_model import SinrPair

# Denominators and log arguments closer to zero than this raise NumericalDomain.
DENOM_TOL = 1e-12


@dataclass(frozen=True)
class TauBounds:
    """Raw lower/upper thresholds on the common rate share.

    Either value may leave (0, 1): a negative ``lower`` means the strong
    user is unconstrained from below, an ``upper`` above 1 means the weak
    user is unconstrained from above. Both raw values are retained for
    diagnostics; :attr:`feasible` tells whether a valid share exists.
    """

    lower: float
    upper: float

    @property
    def window(self) -> tuple[float, float]:
        """The usable share interval, clipped to (0, 1)."""
        return (max(self.lower, 0.0), min(self.upper, 1.0))

    @property
    def feasible(self) -> bool:
        lo, hi = self.window
        return lo < hi


@dataclass(frozen=True)
class AlphaBounds:
    """Bounds on the common-power fraction at a fixed ``lam`` and ``beta``.

    ``strict_upper`` is present only when the cubic admits a feasible
    interval; ``soft_upper`` may exceed 1 and never gates anything.
    """

    lower: float
    soft_upper: float
    strict_upper: float | None = None

    def __post_init__(self) -> None:
        if self.strict_upper is not None and not 0.0 < self.lower < self.strict_upper < 1.0:
            raise InternalContractViolation(
                f"alpha bounds out of order: lower={self.lower!r}, strict_upper={self.strict_upper!r}"
            )


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of the cubic in ``alpha_c`` equivalent to tau_lower < tau_upper.

    ``evaluate(alpha) < 0`` holds exactly where the strong user's share
    threshold is below the weak user's. ``a_term`` through ``d_term`` are
    the auxiliary combinations of the SINRs, ``lam`` and ``beta`` used to
    assemble the coefficients.
    """

    c3: float
    c2: float
    c1: float
    c0: float
    a_term: float
    b_term: float
    c_term: float
    d_term: float

    def evaluate(self, alpha):
        """Horner evaluation; ``alpha`` may be a scalar or ndarray."""
        return ((self.c3 * alpha + self.c2) * alpha + self.c1) * alpha + self.c0


@dataclass(frozen=True)
class LambdaBounds:
    """The four necessary lower bounds on ``lam`` and their maximum.

    ``lam_s_num``/``lam_s_den`` keep the strong-user alpha bound's numerator
    and denominator positive; ``lam_w_num``/``lam_w_den`` do the same for
    the weak-user expression. None of them is strict: the true threshold is
    located numerically above ``soft_lower``.
    """

    lam_s_num: float
    lam_s_den: float
    lam_w_num: float
    lam_w_den: float
    soft_lower: float


def _check_unit_open(name: str, value) -> None:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} must be finite")
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise InvalidInput(f"{name} must lie in the open interval (0, 1)")


def _check_beta(beta: float) -> None:
    if not np.isfinite(beta) or not 0.0 <= beta <= 1.0:
        raise InvalidInput(f"beta must lie in [0, 1], got {beta!r}")


def _tau_denominator(gw: float, alpha_c):
    """Common denominator of both tau thresholds: log2 of the weak user's
    common-stream rate ratio. Positive for every alpha_c in (0, 1) but
    vanishes as alpha_c -> 0."""
    arg = (gw + 1.0) / (gw * (1.0 - alpha_c) + 1.0)
    if np.any(arg <= 0.0):
        raise NumericalDomain("common-rate log argument left its positive domain")
    den = np.log2(arg)
    if np.any(np.abs(den) < DENOM_TOL):
        raise NumericalDomain(
            "common rate vanishes (alpha_c too close to 0); tau thresholds undefined"
        )
    return den


def tau_lower(sinr: SinrPair, alpha_c, lam: float, beta: float):
    """Share of the common rate below which the strong user loses to its baseline.

    May be negative (strong user wins even with no common-rate credit) or
    exceed 1 (no share can save it). ``alpha_c`` may be an ndarray.
    """
    _check_unit_open("alpha_c", alpha_c)
    _check_unit_open("lam", lam)
    _check_beta(beta)
    gs, gw = sinr.gamma_s, sinr.gamma_w
    num_arg = (
        np.sqrt(1.0 + gs)
        * (beta * alpha_c * gs + gs * (1.0 - lam) * (1.0 - alpha_c) + 1.0)
        / (alpha_c * gs * (beta - 1.0) + gs + 1.0)
    )
    if np.any(num_arg <= 0.0):
        raise NumericalDomain("strong-user log argument left its positive domain")
    return np.log2(num_arg) / _tau_denominator(gw, alpha_c)


def tau_upper(sinr: SinrPair, alpha_c, lam: float, beta: float):
    """Share of the common rate above which the weak user loses to its baseline.

    May exceed 1 (weak user unconstrained) or be negative (weak user loses
    even with the full common rate). ``alpha_c`` may be an ndarray.
    """
    _check_unit_open("alpha_c", alpha_c)
    _check_unit_open("lam", lam)
    _check_beta(beta)
    gw = sinr.gamma_w
    num_arg = (
        (gw + 1.0)
        * (alpha_c * gw * (beta - 1.0) + gw + 1.0)
        / (
            np.sqrt(1.0 + gw)
            * (gw * (1.0 - alpha_c) + 1.0)
            * (beta * alpha_c * gw + lam * gw * (1.0 - alpha_c) + 1.0)
        )
    )
    if np.any(num_arg <= 0.0):
        raise NumericalDomain("weak-user log argument left its positive domain")
    return np.log2(num_arg) / _tau_denominator(gw, alpha_c)


def tau_bounds(sinr: SinrPair, alpha_c: float, lam: float, beta: float) -> TauBounds:
    """Both tau thresholds at one configuration."""
    return TauBounds(
        lower=float(tau_lower(sinr, alpha_c, lam, beta)),
        upper=float(tau_upper(sinr, alpha_c, lam, beta)),
    )


def lam_s_den_threshold(sinr: SinrPair, beta: float) -> float:
    """Value of ``lam`` at which the strong-user alpha bound's denominator changes sign."""
    root = np.sqrt(1.0 + sinr.gamma_s)
    return float((root - 1.0) * (1.0 - beta) / root)


def alpha_lower(sinr: SinrPair, lam: float, beta: float) -> float:
    """Common-power fraction above which the strong user strictly needs the common stream.

    At exactly this fraction the strong user's private rate equals its
    orthogonal baseline. Defined only where its denominator is positive,
    which requires ``lam`` above :func:`lam_s_den_threshold`; always below 1
    for ``beta`` in [0, 1]. The returned value may be <= 0 for small ``lam``
    (the constraint is then vacuous).
    """
    _check_unit_open("lam", lam)
    _check_beta(beta)
    gs = sinr.gamma_s
    root = np.sqrt(1.0 + gs)
    num = root * (lam * gs - gs - 1.0) + gs + 1.0
    den = gs * (root * (beta - 1.0 + lam) + 1.0 - beta)
    if den <= DENOM_TOL:
        raise DenominatorSignViolation(
            f"alpha_lower undefined: lam={lam!r} is not above the sign threshold "
            f"{lam_s_den_threshold(sinr, beta):.6f}"
        )
    return float(num / den)


def alpha_soft_upper(sinr: SinrPair, lam: float, beta: float) -> float:
    """Weak-user counterpart of :func:`alpha_lower`; not a strict bound.

    Whenever its denominator is positive the value is >= 1, so it never
    constrains ``alpha_c`` inside (0, 1). Returned raw (possibly above 1 or
    negative); only a vanishing denominator is an error.
    """
    _check_unit_open("lam", lam)
    _check_beta(beta)
    gw = sinr.gamma_w
    root = np.sqrt(1.0 + gw)
    num = root * (lam * gw + 1.0) - (1.0 + gw)
    den = gw * (root * (lam - beta) + beta - 1.0)
    if abs(den) < DENOM_TOL:
        raise DenominatorSignViolation(
            f"alpha_soft_upper undefined: denominator vanishes at lam={lam!r}, beta={beta!r}"
        )
    return float(num / den)


def cubic_coeffs(sinr: SinrPair, lam: float, beta: float) -> CubicCoeffs:
    """Cubic polynomial in ``alpha_c`` equivalent to ``tau_lower < tau_upper``.

    Clearing the (shared, positive) log denominator and the logarithms from
    ``tau_lower < tau_upper`` and dividing by ``a_term`` leaves a cubic
    whose sign matches the threshold comparison everywhere on the valid
    domain: negative exactly where a usable share window exists.
    """
    _check_unit_open("lam", lam)
    _check_beta(beta)
    gs, gw = sinr.gamma_s, sinr.gamma_w
    a_term = float(np.sqrt(1.0 + gs) * np.sqrt(1.0 + gw))
    b_term = beta * (beta - 1.0) + lam * (1.0 - lam)
    mixed = gs * gw * (1.0 - lam) + gw - gs
    c_term = beta * (gs + gw) + gs * gw * (beta - lam * (1.0 - lam)) - lam * mixed - gs
    d_term = lam * mixed + gs + 1.0
    c3 = -gs * gw**2 * b_term
    c2 = gw * (gs * b_term * (gw + 1.0) - c_term) - gs * gw * (beta - 1.0) ** 2 * (gw + 1.0) / a_term
    c1 = (
        gw * (c_term - d_term)
        + c_term
        - (beta - 1.0) * (gw + 1.0) * (2.0 * gs * gw + gs + gw) / a_term
    )
    c0 = (gw + 1.0) * (d_term - (gs + 1.0) * (gw + 1.0) / a_term)
    return CubicCoeffs(
        c3=float(c3),
        c2=float(c2),
        c1=float(c1),
        c0=float(c0),
        a_term=a_term,
        b_term=float(b_term),
        c_term=float(c_term),
        d_term=float(d_term),
    )


def lambda_soft_lower(sinr: SinrPair, beta: float) -> LambdaBounds:
    """All four necessary lower bounds on ``lam`` and their maximum."""
    _check_beta(beta)
    gs, gw = sinr.gamma_s, sinr.gamma_w
    root_s = float(np.sqrt(1.0 + gs))
    root_w = float(np.sqrt(1.0 + gw))
    lam_s_num = (root_s - 1.0) * root_s / gs
    lam_s_den = (root_s - 1.0) * (1.0 - beta) / root_s
    lam_w_num = (root_w - 1.0) / gw
    lam_w_den = (beta * (root_w - 1.0) + 1.0) / root_w
    return LambdaBounds(
        lam_s_num=lam_s_num,
        lam_s_den=lam_s_den,
        lam_w_num=lam_w_num,
        lam_w_den=lam_w_den,
        soft_lower=max(lam_s_num, lam_s_den, lam_w_num, lam_w_den),
    )
