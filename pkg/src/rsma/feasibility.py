"""Numeric search on top of the closed-form bounds.

The closed forms leave three things to locate numerically:

* the feasible interval of the common-power fraction at a fixed ``lam``
  (where the sign-comparison cubic is negative above the strong user's
  needs-common threshold),
* the strict lower bound on ``lam`` (the smallest ``lam`` admitting a
  nonempty interval), and
* the cancellation-imperfection level at which a fixed configuration stops
  beating the strong user's baseline.

Roots are isolated by sign-change scanning refined with bisection; the
closed-form cubic formula is avoided on purpose (no cancellation issues
near repeated roots, and the domain is a bounded interval). Feasibility is
never assumed monotone in ``lam``: the scan finds the first feasible value,
and an optional validation pass re-scans the whole range and fails loudly
if the feasible set is not an up-set.

All routines are deterministic pure functions; results do not depend on
thread count or call order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .errors import (
    DenominatorSignViolation,
    Infeasible,
    InfeasibleAtBoundary,
    InternalContractViolation,
    InvalidInput,
    NoFeasibleLambda,
)
from .rate_model import RateReport, RsmaParams, SinrPair, rsma_rates

ALPHA_SCAN_STEP = 1e-4
ALPHA_ROOT_TOL = 1e-10
LAMBDA_SCAN_STEP = 1e-3
LAMBDA_ROOT_TOL = 1e-6
BETA_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class AlphaInterval:
    """Feasible interval of the common-power fraction at one (lam, beta).

    When ``present``, the cubic is strictly negative on (lb, ub): ``lb`` is
    the needs-common threshold itself whenever the cubic is already negative
    there (the usual case), otherwise the first down-crossing above it, and
    ``ub`` is the root terminating the interval. ``alpha_lb`` always carries
    the needs-common threshold for reference, and ``extra_intervals`` any
    further negative stretches above ``ub`` (diagnostics only; selection
    uses the first interval).
    """

    present: bool
    lb: float | None
    ub: float | None
    alpha_lb: float
    extra_intervals: tuple[tuple[float, float], ...] = ()

    @property
    def width(self) -> float:
        if not self.present:
            return 0.0
        return self.ub - self.lb


@dataclass(frozen=True)
class SelectionPolicy:
    """Relative positions used to fix the free choices of the selection recipe.

    ``lambda_offset`` is the fraction of (1 - strict lower bound) added above
    that bound; the other two are relative positions inside the respective
    feasible intervals. Midpoints by default: the least committal interior
    point, keeping the share away from both equality frontiers.
    """

    lambda_offset: float = 0.5
    alpha_position: float = 0.5
    tau_position: float = 0.5

    def __post_init__(self) -> None:
        for name in ("lambda_offset", "alpha_position", "tau_position"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and 0.0 < value < 1.0):
                raise InvalidInput(f"{name} must lie in the open interval (0, 1), got {value!r}")


@dataclass(frozen=True)
class SelectedParams:
    """Outcome of the end-to-end parameter selection.

    The report always satisfies both strict rate inequalities (that is the
    whole point of the construction; a violation aborts instead of
    returning). ``lambda_strict_lower`` is None when the caller pinned
    ``lam`` instead of selecting it above the strict bound.
    """

    params: RsmaParams
    lambda_strict_lower: float | None
    alpha_interval: AlphaInterval
    tau_bounds: bounds.TauBounds
    report: RateReport


def _refine_root(coeffs: bounds.CubicCoeffs, lo: float, hi: float) -> float:
    """Bisect a sign change of the cubic down to ALPHA_ROOT_TOL."""
    f_lo = coeffs.evaluate(lo)
    if f_lo == 0.0:
        return lo
    neg_low = f_lo < 0.0
    while hi - lo > ALPHA_ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if (coeffs.evaluate(mid) < 0.0) == neg_low:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _negative_runs(values: np.ndarray) -> list[tuple[int, int]]:
    """Index ranges [i, j) of consecutive grid points with a negative cubic."""
    neg = values < 0.0
    runs: list[tuple[int, int]] = []
    i = 0
    n = neg.size
    while i < n:
        if neg[i]:
            j = i
            while j < n and neg[j]:
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    return runs


def alpha_feasible_interval(sinr: SinrPair, lam: float, beta: float) -> AlphaInterval:
    """First maximal interval of common-power fractions with a usable share window.

    Scans the cubic on (needs-common threshold, 1) at ALPHA_SCAN_STEP and
    refines each bracketing sign change by bisection to ALPHA_ROOT_TOL.
    Raises InfeasibleAtBoundary when the cubic is still negative as
    ``alpha_c`` approaches 1, because no interior upper endpoint exists.
    """
    alb = bounds.alpha_lower(sinr, lam, beta)
    coeffs = bounds.cubic_coeffs(sinr, lam, beta)
    lo = max(alb, 0.0)
    if lo >= 1.0:
        return AlphaInterval(present=False, lb=None, ub=None, alpha_lb=alb)
    n = int(math.ceil((1.0 - lo) / ALPHA_SCAN_STEP))
    grid = lo + ALPHA_SCAN_STEP * np.arange(n + 1)
    grid[-1] = 1.0
    values = coeffs.evaluate(grid)
    runs = _negative_runs(values)
    if not runs:
        return AlphaInterval(present=False, lb=None, ub=None, alpha_lb=alb)

    intervals: list[tuple[float, float]] = []
    for start, stop in runs:
        if start == 0:
            lb = lo
        else:
            lb = float(_refine_root(coeffs, grid[start - 1], grid[start]))
        if stop == grid.size:
            # Negative through the last grid point (alpha_c = 1).
            if not intervals:
                raise InfeasibleAtBoundary(
                    f"cubic still negative as alpha_c -> 1 at lam={lam!r}, beta={beta!r}; "
                    "no interior upper endpoint exists"
                )
            intervals.append((lb, 1.0))
            continue
        ub = float(_refine_root(coeffs, grid[stop - 1], grid[stop]))
        intervals.append((lb, ub))

    first = intervals[0]
    return AlphaInterval(
        present=True,
        lb=first[0],
        ub=first[1],
        alpha_lb=alb,
        extra_intervals=tuple(intervals[1:]),
    )


def _feasible_alpha_exists(sinr: SinrPair, lam: float, beta: float) -> bool:
    """Whether any common-power fraction is feasible at this lam."""
    try:
        return alpha_feasible_interval(sinr, lam, beta).present
    except DenominatorSignViolation:
        return False
    except InfeasibleAtBoundary:
        return True


def lambda_strict_lower(sinr: SinrPair, beta: float, validate_monotone: bool = False) -> float:
    """Smallest private-power split admitting a feasible common-power interval.

    Scans forward from the soft lower bound at LAMBDA_SCAN_STEP, then bisects
    between the last infeasible and first feasible value to LAMBDA_ROOT_TOL.
    With ``validate_monotone`` the whole range is re-scanned and a feasible
    value below an infeasible one aborts (feasibility is expected, but not
    assumed, to be an up-set in ``lam``).
    """
    start = bounds.lambda_soft_lower(sinr, beta).soft_lower
    limit = 1.0 - LAMBDA_ROOT_TOL
    if start >= limit:
        raise NoFeasibleLambda(
            f"soft lower bound {start:.6f} leaves no room below 1 at beta={beta!r}"
        )
    start = max(start, LAMBDA_SCAN_STEP)

    lam = start
    previous = None
    boundary = None
    while lam < limit:
        if _feasible_alpha_exists(sinr, lam, beta):
            if previous is None:
                boundary = lam  # feasible already at the soft bound
            else:
                lo, hi = previous, lam
                while hi - lo > LAMBDA_ROOT_TOL:
                    mid = 0.5 * (lo + hi)
                    if _feasible_alpha_exists(sinr, mid, beta):
                        hi = mid
                    else:
                        lo = mid
                boundary = 0.5 * (lo + hi)
            break
        previous = lam
        lam += LAMBDA_SCAN_STEP

    if boundary is None:
        raise NoFeasibleLambda(
            f"no lam below {limit} admits a feasible common-power interval at beta={beta!r}"
        )

    if validate_monotone:
        seen_feasible = False
        lam = start
        while lam < limit:
            feasible = _feasible_alpha_exists(sinr, lam, beta)
            if seen_feasible and not feasible:
                raise InternalContractViolation(
                    f"feasibility in lam is not monotone: infeasible at {lam:.6f} "
                    "above a feasible value"
                )
            seen_feasible = seen_feasible or feasible
            lam += LAMBDA_SCAN_STEP
    return boundary


def alpha_bounds_at(sinr: SinrPair, lam: float, beta: float) -> bounds.AlphaBounds:
    """Assembled alpha bounds: needs-common threshold, soft upper, strict upper."""
    interval = alpha_feasible_interval(sinr, lam, beta)
    return bounds.AlphaBounds(
        lower=interval.alpha_lb,
        soft_upper=bounds.alpha_soft_upper(sinr, lam, beta),
        strict_upper=interval.ub if interval.present else None,
    )


def select_at_lambda(
    sinr: SinrPair,
    lam: float,
    beta: float,
    policy: SelectionPolicy | None = None,
    lambda_strict: float | None = None,
) -> SelectedParams:
    """Selection steps at a pinned private-power split.

    Picks the common-power fraction at ``policy.alpha_position`` inside the
    feasible interval, then the common rate share at ``policy.tau_position``
    inside the usable window, and verifies the resulting rates strictly beat
    both baselines (aborting otherwise, since a violation means a bound was
    transcribed wrong).
    """
    policy = policy or SelectionPolicy()
    interval = alpha_feasible_interval(sinr, lam, beta)
    if not interval.present:
        raise Infeasible(f"no feasible common-power fraction at lam={lam!r}, beta={beta!r}")
    alpha_c = interval.lb + policy.alpha_position * (interval.ub - interval.lb)
    tb = bounds.tau_bounds(sinr, alpha_c, lam, beta)
    lo, hi = tb.window
    if not lo < hi:
        raise InternalContractViolation(
            f"empty share window inside the feasible interval: ({tb.lower!r}, {tb.upper!r}) "
            f"at alpha_c={alpha_c!r}, lam={lam!r}, beta={beta!r}"
        )
    tau = lo + policy.tau_position * (hi - lo)
    params = RsmaParams(alpha_c=alpha_c, lam=lam, tau=tau, beta=beta)
    report = rsma_rates(sinr, params)
    if not (report.r_rsma_s > report.r_oma_s and report.r_rsma_w > report.r_oma_w):
        raise InternalContractViolation(
            "selected configuration fails a strict rate inequality; "
            f"params={params!r}, report={report!r}"
        )
    return SelectedParams(
        params=params,
        lambda_strict_lower=lambda_strict,
        alpha_interval=interval,
        tau_bounds=tb,
        report=report,
    )


def select_params(
    sinr: SinrPair, beta: float, policy: SelectionPolicy | None = None
) -> SelectedParams:
    """End-to-end parameter selection.

    Locates the strict lower bound on ``lam``, moves ``policy.lambda_offset``
    of the remaining headroom above it, and completes the selection there.
    """
    policy = policy or SelectionPolicy()
    lam_lo = lambda_strict_lower(sinr, beta)
    lam = lam_lo + policy.lambda_offset * (1.0 - lam_lo)
    return select_at_lambda(sinr, lam, beta, policy, lambda_strict=lam_lo)


def beta_crossover(sinr: SinrPair, alpha_c: float, lam: float, tau: float) -> float:
    """Cancellation-imperfection level where the strong user stops beating its baseline.

    The strong user's rate-splitting rate decreases strictly in ``beta``
    while its baseline is constant, so the gap has at most one root:
    bisected to BETA_ROOT_TOL. Returns 0 when the configuration already
    fails at perfect cancellation and 1 when it survives even with no
    cancellation.
    """

    def gap(beta: float) -> float:
        report = rsma_rates(sinr, RsmaParams(alpha_c=alpha_c, lam=lam, tau=tau, beta=beta))
        return report.r_rsma_s - report.r_oma_s

    if gap(0.0) <= 0.0:
        return 0.0
    if gap(1.0) > 0.0:
        return 1.0
    lo, hi = 0.0, 1.0  # gap(lo) > 0 >= gap(hi)
    while hi - lo > BETA_ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
