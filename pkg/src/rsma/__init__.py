"""Two-user downlink rate splitting under imperfect interference cancellation.

Core surface:

* :mod:`rsma.rate_model`   SINRs and rates, orthogonal baseline vs. rate splitting
* :mod:`rsma.bounds`       closed-form bounds on the share and power fractions
* :mod:`rsma.feasibility`  root isolation, strict bounds, parameter selection
* :mod:`rsma.oracle`       brute-force region mapping and frontier bisection
* :mod:`rsma.experiments`  deterministic sweeps and the CSV contract
* :mod:`rsma.service`      FastAPI wrapper; :mod:`rsma.cli` is its thin client
"""

from . import bounds, errors, experiments, feasibility, oracle, rate_model, scenario
from .bounds import (
    AlphaBounds,
    CubicCoeffs,
    LambdaBounds,
    TauBounds,
    alpha_lower,
    alpha_soft_upper,
    cubic_coeffs,
    lambda_soft_lower,
    tau_bounds,
    tau_lower,
    tau_upper,
)
from .errors import (
    DegeneratePair,
    DenominatorSignViolation,
    GridTooCoarse,
    Infeasible,
    InfeasibleAtBoundary,
    InternalContractViolation,
    InvalidInput,
    NoFeasibleLambda,
    NumericalDomain,
    RsmaError,
)
from .feasibility import (
    AlphaInterval,
    SelectedParams,
    SelectionPolicy,
    alpha_feasible_interval,
    beta_crossover,
    lambda_strict_lower,
    select_at_lambda,
    select_params,
)
from .oracle import FrontierResult, GridSpec, RegionReport, map_region, tau_frontier_bisect
from .rate_model import (
    LinkBudget,
    PowerSplit,
    RateReport,
    RsmaParams,
    RsmaSinrs,
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

__version__ = "0.1.0"

__all__ = [
    "AlphaBounds",
    "AlphaInterval",
    "CubicCoeffs",
    "DegeneratePair",
    "DenominatorSignViolation",
    "FrontierResult",
    "GridSpec",
    "GridTooCoarse",
    "Infeasible",
    "InfeasibleAtBoundary",
    "InternalContractViolation",
    "InvalidInput",
    "LambdaBounds",
    "LinkBudget",
    "NoFeasibleLambda",
    "NumericalDomain",
    "PowerSplit",
    "RateReport",
    "RegionReport",
    "RsmaError",
    "RsmaParams",
    "RsmaSinrs",
    "SelectedParams",
    "SelectionPolicy",
    "SinrPair",
    "TauBounds",
    "alpha_feasible_interval",
    "alpha_lower",
    "alpha_soft_upper",
    "beta_crossover",
    "bounds",
    "cubic_coeffs",
    "db_to_linear",
    "errors",
    "experiments",
    "feasibility",
    "lambda_soft_lower",
    "lambda_strict_lower",
    "linear_to_db",
    "map_region",
    "oma_rate",
    "oma_sinr",
    "oracle",
    "power_split",
    "rate_model",
    "rsma_rates",
    "rsma_sinrs",
    "rsma_sinrs_from_budget",
    "scenario",
    "select_at_lambda",
    "select_params",
    "sinr_pair_from_db",
    "tau_bounds",
    "tau_frontier_bisect",
    "tau_lower",
    "tau_upper",
]
