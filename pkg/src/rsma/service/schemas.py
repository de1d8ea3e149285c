"""Pydantic request/response models for the HTTP service.

The JSON field for the private-power split is ``lambda``; models use the
attribute name ``lam`` with an alias, and accept either spelling.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import InvalidInput
from ..feasibility import SelectionPolicy
from ..rate_model import SinrPair
from ..scenario import Scenario, scenario_from_dict


class PolicyModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lambda_offset: float = Field(default=0.5, gt=0.0, lt=1.0)
    alpha_position: float = Field(default=0.5, gt=0.0, lt=1.0)
    tau_position: float = Field(default=0.5, gt=0.0, lt=1.0)

    def to_policy(self) -> SelectionPolicy:
        return SelectionPolicy(
            lambda_offset=self.lambda_offset,
            alpha_position=self.alpha_position,
            tau_position=self.tau_position,
        )


class ScenarioModel(BaseModel):
    """Link description: either dB SINRs or a full link budget, plus extras."""

    model_config = ConfigDict(extra="forbid")

    gamma_s_db: float | None = None
    gamma_w_db: float | None = None
    p_t: float | None = None
    gain_s: float | None = None
    gain_w: float | None = None
    noise: float | None = None
    interference_s: float | None = None
    interference_w: float | None = None
    beta: float = Field(default=0.0, ge=0.0, le=1.0)
    policy: PolicyModel | None = None

    @model_validator(mode="after")
    def _one_form(self) -> "ScenarioModel":
        # Full validation (exactly one form, ordering, positivity) happens in
        # scenario_from_dict; this only rejects obviously empty payloads early.
        if self.gamma_s_db is None and self.p_t is None:
            raise ValueError("scenario needs gamma_s_db/gamma_w_db or link-budget fields")
        return self

    def to_scenario(self) -> Scenario:
        data = self.model_dump(exclude_none=True)
        policy = data.pop("policy", None)
        if policy is not None:
            data["policy"] = policy
        return scenario_from_dict(data)

    def to_sinr(self) -> SinrPair:
        return self.to_scenario().sinr


def resolve_beta(scenario: ScenarioModel, override: float | None) -> float:
    """Request-level beta wins over the scenario's."""
    if override is None:
        return scenario.beta
    if not 0.0 <= override <= 1.0:
        raise InvalidInput(f"beta must lie in [0, 1], got {override!r}")
    return override


class RatesRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    scenario: ScenarioModel
    alpha_c: float
    lam: float = Field(alias="lambda")
    tau: float
    beta: float | None = None


class RatesResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    gamma_s: float
    gamma_w: float
    alpha_c: float
    lam: float = Field(serialization_alias="lambda")
    tau: float
    beta: float
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


class BoundsRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    scenario: ScenarioModel
    lam: float = Field(alias="lambda")
    alpha_c: float | None = None
    beta: float | None = None
    include_strict: bool = True


class AlphaIntervalModel(BaseModel):
    present: bool
    lb: float | None = None
    ub: float | None = None


class BoundsResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    gamma_s: float
    gamma_w: float
    lam: float = Field(serialization_alias="lambda")
    beta: float
    tau_lower: float | None = None
    tau_upper: float | None = None
    alpha_lb: float
    alpha_soft_ub: float
    alpha_interval: AlphaIntervalModel
    lam_s_num: float
    lam_s_den: float
    lam_w_num: float
    lam_w_den: float
    lambda_soft_lower: float
    lambda_strict_lower: float | None = None
    cubic_c3: float
    cubic_c2: float
    cubic_c1: float
    cubic_c0: float
    cubic_a: float
    cubic_b: float
    cubic_c: float
    cubic_d: float


class SelectRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioModel
    beta: float | None = None
    policy: PolicyModel | None = None


class SelectResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    gamma_s: float
    gamma_w: float
    beta: float
    lambda_strict_lower: float
    lam: float = Field(serialization_alias="lambda")
    alpha_c: float
    tau: float
    alpha_lb: float
    alpha_ub: float
    tau_lower: float
    tau_upper: float
    r_oma_s: float
    r_oma_w: float
    r_comm: float
    r_priv_s: float
    r_priv_w: float
    r_rsma_s: float
    r_rsma_w: float
    sum_rsma: float
    sum_oma: float


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: str | None = None
    spec: dict | list[dict] | None = None
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _exactly_one(self) -> "SweepRequest":
        if (self.preset is None) == (self.spec is None):
            raise ValueError("provide exactly one of 'preset' or 'spec'")
        return self


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioModel
    beta: float | None = None
    grid_step: float = Field(default=0.002, gt=0.0, lt=0.5)
    perturb_tau_lower: float = 0.0


class MismatchCellModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(serialization_alias="lambda")
    alpha_c: float
    tau: float


class VerifyResponse(BaseModel):
    passed: bool
    mismatch_count: int
    feasible_count: int
    needs_common_count: int
    empirical_lambda_min: float | None
    frontier_checks: int
    frontier_max_error: float
    frontier_passed: bool
    grid_step: float
    beta: float
    mismatch_samples: list[MismatchCellModel]
