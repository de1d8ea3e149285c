"""Service-layer handlers: one function per endpoint, shared with the CLI.

Handlers take validated request models and return response models (the
sweep handler returns CSV text). Domain errors propagate as the package's
exception types; the HTTP layer and the CLI map them to status codes and
exit codes respectively.
"""

from __future__ import annotations

import numpy as np

from .. import bounds, experiments, feasibility, oracle
from ..errors import NumericalDomain
from ..rate_model import RsmaParams, rsma_rates
from . import schemas

FRONTIER_CHECKS = 40
FRONTIER_TOL = 1e-8
_FRONTIER_SEED = 170_561


def rates(req: schemas.RatesRequest) -> schemas.RatesResponse:
    scenario = req.scenario.to_scenario()
    beta = schemas.resolve_beta(req.scenario, req.beta)
    params = RsmaParams(alpha_c=req.alpha_c, lam=req.lam, tau=req.tau, beta=beta)
    report = rsma_rates(scenario.sinr, params)
    return schemas.RatesResponse(
        gamma_s=scenario.sinr.gamma_s,
        gamma_w=scenario.sinr.gamma_w,
        alpha_c=params.alpha_c,
        lam=params.lam,
        tau=params.tau,
        beta=params.beta,
        **{name: getattr(report, name) for name in report.__dataclass_fields__},
    )


def bounds_report(req: schemas.BoundsRequest) -> schemas.BoundsResponse:
    scenario = req.scenario.to_scenario()
    sinr = scenario.sinr
    beta = schemas.resolve_beta(req.scenario, req.beta)
    lam = req.lam

    tau_lower = tau_upper = None
    if req.alpha_c is not None:
        tb = bounds.tau_bounds(sinr, req.alpha_c, lam, beta)
        tau_lower, tau_upper = tb.lower, tb.upper

    interval = feasibility.alpha_feasible_interval(sinr, lam, beta)
    soft = bounds.lambda_soft_lower(sinr, beta)
    coeffs = bounds.cubic_coeffs(sinr, lam, beta)
    strict = feasibility.lambda_strict_lower(sinr, beta) if req.include_strict else None

    return schemas.BoundsResponse(
        gamma_s=sinr.gamma_s,
        gamma_w=sinr.gamma_w,
        lam=lam,
        beta=beta,
        tau_lower=tau_lower,
        tau_upper=tau_upper,
        alpha_lb=interval.alpha_lb,
        alpha_soft_ub=bounds.alpha_soft_upper(sinr, lam, beta),
        alpha_interval=schemas.AlphaIntervalModel(
            present=interval.present, lb=interval.lb, ub=interval.ub
        ),
        lam_s_num=soft.lam_s_num,
        lam_s_den=soft.lam_s_den,
        lam_w_num=soft.lam_w_num,
        lam_w_den=soft.lam_w_den,
        lambda_soft_lower=soft.soft_lower,
        lambda_strict_lower=strict,
        cubic_c3=coeffs.c3,
        cubic_c2=coeffs.c2,
        cubic_c1=coeffs.c1,
        cubic_c0=coeffs.c0,
        cubic_a=coeffs.a_term,
        cubic_b=coeffs.b_term,
        cubic_c=coeffs.c_term,
        cubic_d=coeffs.d_term,
    )


def select(req: schemas.SelectRequest) -> schemas.SelectResponse:
    scenario = req.scenario.to_scenario()
    beta = schemas.resolve_beta(req.scenario, req.beta)
    policy = req.policy.to_policy() if req.policy is not None else scenario.policy
    chosen = feasibility.select_params(scenario.sinr, beta, policy)
    report = chosen.report
    return schemas.SelectResponse(
        gamma_s=scenario.sinr.gamma_s,
        gamma_w=scenario.sinr.gamma_w,
        beta=beta,
        lambda_strict_lower=chosen.lambda_strict_lower,
        lam=chosen.params.lam,
        alpha_c=chosen.params.alpha_c,
        tau=chosen.params.tau,
        alpha_lb=chosen.alpha_interval.lb,
        alpha_ub=chosen.alpha_interval.ub,
        tau_lower=chosen.tau_bounds.lower,
        tau_upper=chosen.tau_bounds.upper,
        r_oma_s=report.r_oma_s,
        r_oma_w=report.r_oma_w,
        r_comm=report.r_comm,
        r_priv_s=report.r_priv_s,
        r_priv_w=report.r_priv_w,
        r_rsma_s=report.r_rsma_s,
        r_rsma_w=report.r_rsma_w,
        sum_rsma=report.sum_rsma,
        sum_oma=report.sum_oma,
    )


def sweep(req: schemas.SweepRequest) -> str:
    if req.preset is not None:
        return experiments.preset_csv(req.preset, workers=req.workers)
    raw = req.spec if isinstance(req.spec, list) else [req.spec]
    specs = [experiments.sweep_spec_from_dict(d) for d in raw]
    return experiments.to_csv(experiments.run_sweeps(specs, workers=req.workers))


def _frontier_agreement(sinr, beta: float) -> tuple[int, float]:
    """Compare the closed-form share thresholds against the bisection oracle.

    Samples a fixed set of (lam, alpha_c) pairs; for thresholds inside (0, 1)
    the two values must agree to FRONTIER_TOL, saturated cases must be
    consistent with an out-of-range threshold. Returns (checks, max error).
    """
    rng = np.random.default_rng(_FRONTIER_SEED)
    checks = 0
    attempts = 0
    max_err = 0.0
    while checks < FRONTIER_CHECKS and attempts < 10 * FRONTIER_CHECKS:
        attempts += 1
        lam = float(rng.uniform(0.05, 0.95))
        alpha_c = float(rng.uniform(0.05, 0.95))
        try:
            tb = bounds.tau_bounds(sinr, alpha_c, lam, beta)
        except NumericalDomain:
            continue
        for which, value in (("strong", tb.lower), ("weak", tb.upper)):
            frontier = oracle.tau_frontier_bisect(sinr, alpha_c, lam, beta, which)
            if frontier.saturated:
                if 0.0 < value < 1.0:
                    # A saturated oracle means no interior crossing; an interior
                    # closed-form threshold then counts as error by its distance
                    # from the nearer endpoint.
                    max_err = max(max_err, min(abs(value), abs(value - 1.0)))
                continue
            max_err = max(max_err, abs(frontier.tau - value))
        checks += 1
    return checks, max_err


def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    scenario = req.scenario.to_scenario()
    beta = schemas.resolve_beta(req.scenario, req.beta)
    grid = oracle.GridSpec.with_step(req.grid_step, beta=beta)
    report = oracle.map_region(scenario.sinr, grid, perturb_tau_lower=req.perturb_tau_lower)
    checks, max_err = _frontier_agreement(scenario.sinr, beta)
    frontier_ok = max_err < FRONTIER_TOL
    samples = [
        schemas.MismatchCellModel(lam=row[0], alpha_c=row[1], tau=row[2])
        for row in report.mismatch_samples[:10]
    ]
    return schemas.VerifyResponse(
        passed=report.mismatch_count == 0 and frontier_ok,
        mismatch_count=report.mismatch_count,
        feasible_count=report.feasible_count,
        needs_common_count=report.needs_common_count,
        empirical_lambda_min=report.empirical_lambda_min(),
        frontier_checks=checks,
        frontier_max_error=max_err,
        frontier_passed=frontier_ok,
        grid_step=req.grid_step,
        beta=beta,
        mismatch_samples=samples,
    )
