"""Brute-force verification of the closed-form bounds against the rate model.

:func:`map_region` walks a (lam, alpha_c, tau) grid, evaluates the exact
rate model at every cell, and records where both users strictly beat their
orthogonal baselines. Each cell's verdict is compared with the closed-form
share window at the same point; a disagreement counts as a mismatch only
when the cell lies more than one grid step inside the opposing verdict's
region, since the true boundaries fall between grid points by construction.
A passing run has ``mismatch_count == 0``.

Because both rates are affine in the share ``tau`` (the per-stream rates do
not depend on it), the feasible ``tau`` set at a fixed (lam, alpha_c) is an
interval, so the grid is effectively two-dimensional: per column the model
is evaluated once per ``tau`` grid point by the same affine combination the
rate report uses, and the feasible cells are stored as per-column ``tau``
spans. Strict inequalities are evaluated with zero tolerance at grid points.

:func:`tau_frontier_bisect` is the independent numeric oracle for the share
thresholds: it bisects the exact rate gap in ``tau`` (affine, so bisection
converges unconditionally) instead of evaluating any closed form.

Everything here is deterministic: identical inputs produce identical
reports regardless of call order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import bounds
from .errors import GridTooCoarse, InvalidInput
from .rate_model import RsmaParams, SinrPair, oma_rate, rsma_rates

FRONTIER_TOL = 1e-10
MISMATCH_SAMPLE_LIMIT = 50


def _check_range(name: str, rng: tuple[float, float, float]) -> None:
    if len(rng) != 3 or not all(math.isfinite(v) for v in rng):
        raise InvalidInput(f"{name} must be a finite (start, end, step) triple, got {rng!r}")
    start, end, step = rng
    if not 0.0 < start < end <= 1.0:
        raise InvalidInput(f"{name} must satisfy 0 < start < end <= 1, got {rng!r}")
    if step <= 0.0 or step > end - start:
        raise InvalidInput(f"{name} step must lie in (0, end - start], got {rng!r}")


def _axis(rng: tuple[float, float, float]) -> np.ndarray:
    """Grid points start, start+step, ... strictly below end."""
    start, end, step = rng
    n = int(math.ceil((end - start) / step - 1e-9))
    return start + step * np.arange(n)


@dataclass(frozen=True)
class GridSpec:
    """Search grid for the region map: one (start, end, step) triple per axis."""

    lambda_range: tuple[float, float, float]
    alpha_range: tuple[float, float, float]
    tau_range: tuple[float, float, float]
    beta: float = 0.0

    def __post_init__(self) -> None:
        _check_range("lambda_range", self.lambda_range)
        _check_range("alpha_range", self.alpha_range)
        _check_range("tau_range", self.tau_range)
        if not (math.isfinite(self.beta) and 0.0 <= self.beta <= 1.0):
            raise InvalidInput(f"beta must lie in [0, 1], got {self.beta!r}")

    @classmethod
    def with_step(cls, step: float, beta: float = 0.0) -> "GridSpec":
        """Uniform grid covering (step, 1) on every axis."""
        rng = (step, 1.0, step)
        return cls(lambda_range=rng, alpha_range=rng, tau_range=rng, beta=beta)


@dataclass(frozen=True, eq=False)
class RegionReport:
    """Empirically mapped feasible region and its agreement with the bounds.

    ``tau_spans`` holds one row (lam, alpha_c, tau_min, tau_max) per grid
    column with at least one feasible share; ``alpha_spans`` one row per
    ``lam`` with the feasible alpha_c extremes, both for the full region
    and restricted to columns where the strong user strictly needs the
    common stream (its private rate alone is below its baseline); that
    restricted span is the region the selection recipe actually searches.
    ``mismatch_count`` is 0 on a passing run.
    """

    grid: GridSpec
    tau_spans: np.ndarray  # (m, 4): lam, alpha_c, tau_min, tau_max
    alpha_spans: np.ndarray  # (n_lam, 5): lam, a_min, a_max, a_min_common, a_max_common
    feasible_count: int
    needs_common_count: int
    mismatch_count: int
    mismatch_samples: np.ndarray  # (k, 3): lam, alpha_c, tau

    @property
    def feasible_cells(self) -> np.ndarray:
        """All feasible (lam, alpha_c, tau) grid points, expanded from the spans."""
        step = self.grid.tau_range[2]
        chunks = []
        for lam, alpha_c, t_min, t_max in self.tau_spans:
            count = int(round((t_max - t_min) / step)) + 1
            taus = t_min + step * np.arange(count)
            chunk = np.empty((count, 3))
            chunk[:, 0] = lam
            chunk[:, 1] = alpha_c
            chunk[:, 2] = taus
            chunks.append(chunk)
        if not chunks:
            return np.empty((0, 3))
        return np.vstack(chunks)

    def empirical_lambda_min(self) -> float | None:
        """Smallest lam with any feasible cell, or None when the region is empty."""
        if self.tau_spans.shape[0] == 0:
            return None
        return float(self.tau_spans[:, 0].min())

    def alpha_span_at(self, lam: float, needs_common: bool = True) -> tuple[float, float] | None:
        """Feasible alpha_c extremes at the grid lam nearest to ``lam``."""
        if self.alpha_spans.shape[0] == 0:
            return None
        idx = int(np.argmin(np.abs(self.alpha_spans[:, 0] - lam)))
        row = self.alpha_spans[idx]
        lo, hi = (row[3], row[4]) if needs_common else (row[1], row[2])
        if math.isnan(lo):
            return None
        return (float(lo), float(hi))


def _dilate(mask: np.ndarray) -> np.ndarray:
    """Grow a 2-D boolean mask by one cell in every direction (box dilation)."""
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    grown = out.copy()
    grown[:, 1:] |= out[:, :-1]
    grown[:, :-1] |= out[:, 1:]
    return grown


def map_region(sinr: SinrPair, grid: GridSpec, perturb_tau_lower: float = 0.0) -> RegionReport:
    """Map the empirically feasible region and compare it with the closed forms.

    ``perturb_tau_lower`` shifts the closed-form lower threshold before the
    comparison; it exists as a negative control (a nonzero shift must
    produce mismatches) and defaults to off.

    Raises GridTooCoarse when the closed forms predict a nonempty region but
    even its widest extent is below two grid steps on some axis.
    """
    lam_axis = _axis(grid.lambda_range)
    a_axis = _axis(grid.alpha_range)
    t_axis = _axis(grid.tau_range)
    gs, gw = sinr.gamma_s, sinr.gamma_w
    beta = grid.beta
    r_oma_s = oma_rate(gs)
    r_oma_w = oma_rate(gw)

    tau_span_rows: list[np.ndarray] = []
    alpha_span_rows = np.full((lam_axis.size, 5), np.nan)
    feasible_count = 0
    needs_common_count = 0
    mismatch_count = 0
    samples: list[tuple[float, float, float]] = []
    ana_exists = False
    max_ana_alpha_cols = 0
    max_ana_tau_width = 0.0

    one_m_a = 1.0 - a_axis
    # Per-stream rates do not depend on tau; computed once per lam.
    gcs = a_axis * gs / (one_m_a * gs + 1.0)
    gcw = a_axis * gw / (one_m_a * gw + 1.0)
    r_comm = np.minimum(np.log2(1.0 + gcs), np.log2(1.0 + gcw))

    for li, lam in enumerate(lam_axis):
        gps = lam * one_m_a * gs / (beta * a_axis * gs + (1.0 - lam) * one_m_a * gs + 1.0)
        gpw = (1.0 - lam) * one_m_a * gw / (beta * a_axis * gw + lam * one_m_a * gw + 1.0)
        r_priv_s = np.log2(1.0 + gps)
        r_priv_w = np.log2(1.0 + gpw)

        # Empirical verdict: exact rate model, strict comparisons, per cell.
        r_rsma_s = t_axis[None, :] * r_comm[:, None] + r_priv_s[:, None]
        r_rsma_w = (1.0 - t_axis)[None, :] * r_comm[:, None] + r_priv_w[:, None]
        emp = (r_rsma_s > r_oma_s) & (r_rsma_w > r_oma_w)

        # Closed-form verdict at the same cells.
        t_lo = np.asarray(bounds.tau_lower(sinr, a_axis, lam, beta)) + perturb_tau_lower
        t_hi = np.asarray(bounds.tau_upper(sinr, a_axis, lam, beta))
        ana = (t_axis[None, :] > t_lo[:, None]) & (t_axis[None, :] < t_hi[:, None])

        mis = (emp & ~_dilate(ana)) | (ana & ~_dilate(emp))
        n_mis = int(np.count_nonzero(mis))
        if n_mis:
            mismatch_count += n_mis
            for ai, ti in np.argwhere(mis)[: MISMATCH_SAMPLE_LIMIT - len(samples)]:
                samples.append((float(lam), float(a_axis[ai]), float(t_axis[ti])))

        # Coarseness is judged on the continuous windows, not on grid cells:
        # a window narrower than the grid leaves no cell to compare.
        win_width = np.minimum(t_hi, 1.0) - np.maximum(t_lo, 0.0)
        open_cols = win_width > 0.0
        if open_cols.any():
            ana_exists = True
            max_ana_alpha_cols = max(max_ana_alpha_cols, int(open_cols.sum()))
            max_ana_tau_width = max(max_ana_tau_width, float(win_width.max()))

        emp_cols = emp.any(axis=1)
        if not emp_cols.any():
            alpha_span_rows[li, 0] = lam
            continue
        feasible_count += int(np.count_nonzero(emp))

        col_idx = np.nonzero(emp_cols)[0]
        first = emp[col_idx].argmax(axis=1)
        last = emp.shape[1] - 1 - emp[col_idx, ::-1].argmax(axis=1)
        rows = np.empty((col_idx.size, 4))
        rows[:, 0] = lam
        rows[:, 1] = a_axis[col_idx]
        rows[:, 2] = t_axis[first]
        rows[:, 3] = t_axis[last]
        tau_span_rows.append(rows)

        needs_common = r_priv_s < r_oma_s
        common_cols = emp_cols & needs_common
        needs_common_count += int(np.count_nonzero(emp[common_cols]))
        alpha_span_rows[li, 0] = lam
        alpha_span_rows[li, 1] = a_axis[emp_cols].min()
        alpha_span_rows[li, 2] = a_axis[emp_cols].max()
        if common_cols.any():
            alpha_span_rows[li, 3] = a_axis[common_cols].min()
            alpha_span_rows[li, 4] = a_axis[common_cols].max()

    if ana_exists and (max_ana_alpha_cols < 2 or max_ana_tau_width < 2.0 * grid.tau_range[2]):
        raise GridTooCoarse(
            "every closed-form interval is narrower than two grid steps "
            f"(widest alpha extent: {max_ana_alpha_cols} columns, widest share window: "
            f"{max_ana_tau_width:.6f} vs step {grid.tau_range[2]}); refine the grid"
        )

    tau_spans = np.vstack(tau_span_rows) if tau_span_rows else np.empty((0, 4))
    return RegionReport(
        grid=grid,
        tau_spans=tau_spans,
        alpha_spans=alpha_span_rows,
        feasible_count=feasible_count,
        needs_common_count=needs_common_count,
        mismatch_count=mismatch_count,
        mismatch_samples=np.array(samples) if samples else np.empty((0, 3)),
    )


@dataclass(frozen=True)
class FrontierResult:
    """Share equality point located by bisection.

    ``saturated`` marks configurations whose rate gap does not change sign
    inside (0, 1); ``tau`` is then the saturating endpoint.
    """

    tau: float
    saturated: bool


def tau_frontier_bisect(
    sinr: SinrPair,
    alpha_c: float,
    lam: float,
    beta: float,
    which: Literal["strong", "weak"],
) -> FrontierResult:
    """Share at which one user's rate-splitting rate equals its baseline.

    Uses only the exact rate model: the per-stream rates are taken from one
    rate-report evaluation (they do not depend on the share) and the affine
    gap is bisected to FRONTIER_TOL. Independent of every closed form in
    :mod:`rsma.bounds`, which is the point: agreement between the two is the
    transcription check.
    """
    if which not in ("strong", "weak"):
        raise InvalidInput(f"which must be 'strong' or 'weak', got {which!r}")
    probe = rsma_rates(sinr, RsmaParams(alpha_c=alpha_c, lam=lam, tau=0.5, beta=beta))

    if which == "strong":

        def gap(tau: float) -> float:
            return (tau * probe.r_comm + probe.r_priv_s) - probe.r_oma_s

        increasing = True
    else:

        def gap(tau: float) -> float:
            return ((1.0 - tau) * probe.r_comm + probe.r_priv_w) - probe.r_oma_w

        increasing = False

    g0, g1 = gap(0.0), gap(1.0)
    if increasing:
        if g0 >= 0.0:
            return FrontierResult(tau=0.0, saturated=True)
        if g1 <= 0.0:
            return FrontierResult(tau=1.0, saturated=True)
    else:
        if g1 >= 0.0:
            return FrontierResult(tau=1.0, saturated=True)
        if g0 <= 0.0:
            return FrontierResult(tau=0.0, saturated=True)

    lo, hi = 0.0, 1.0
    neg_low = gap(lo) < 0.0
    while hi - lo > FRONTIER_TOL:
        mid = 0.5 * (lo + hi)
        if (gap(mid) < 0.0) == neg_low:
            lo = mid
        else:
            hi = mid
    return FrontierResult(tau=0.5 * (lo + hi), saturated=False)
