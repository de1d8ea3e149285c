"""Scenario files: the on-disk description of a link used by the CLI and service.

A scenario is a JSON object in one of two forms, plus optional extras:

    {"gamma_s_db": 6.0, "gamma_w_db": 2.0}

or

    {"p_t": 1.0, "gain_s": 3.0, "gain_w": 1.0, "noise": 1.0,
     "interference_s": 0.0, "interference_w": 0.0}

Optional keys: ``beta`` (cancellation imperfection, default 0) and
``policy`` ({"lambda_offset", "alpha_position", "tau_position"}).
Exactly one of the two forms must be present. Numbers use a decimal
point; the file is UTF-8.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInput
from .feasibility import SelectionPolicy
from .rate_model import LinkBudget, SinrPair, oma_sinr, sinr_pair_from_db

_DB_KEYS = {"gamma_s_db", "gamma_w_db"}
_BUDGET_KEYS = {"p_t", "gain_s", "gain_w", "noise"}
_BUDGET_OPTIONAL = {"interference_s", "interference_w"}
_EXTRA_KEYS = {"beta", "policy"}


@dataclass(frozen=True)
class Scenario:
    """Parsed scenario: the SINR pair plus optional beta and policy overrides."""

    sinr: SinrPair
    beta: float = 0.0
    policy: SelectionPolicy | None = None


def scenario_from_dict(data: dict) -> Scenario:
    """Validate and convert a scenario mapping."""
    if not isinstance(data, dict):
        raise InvalidInput(f"scenario must be a mapping, got {type(data).__name__}")
    keys = set(data)
    unknown = keys - _DB_KEYS - _BUDGET_KEYS - _BUDGET_OPTIONAL - _EXTRA_KEYS
    if unknown:
        raise InvalidInput(f"unknown scenario keys: {sorted(unknown)}")
    has_db = bool(keys & _DB_KEYS)
    has_budget = bool(keys & (_BUDGET_KEYS | _BUDGET_OPTIONAL))
    if has_db == has_budget:
        raise InvalidInput(
            "scenario must contain exactly one of: {gamma_s_db, gamma_w_db} "
            "or the link-budget fields"
        )
    if has_db:
        if keys & _DB_KEYS != _DB_KEYS:
            raise InvalidInput("both gamma_s_db and gamma_w_db are required")
        sinr = sinr_pair_from_db(float(data["gamma_s_db"]), float(data["gamma_w_db"]))
    else:
        missing = _BUDGET_KEYS - keys
        if missing:
            raise InvalidInput(f"link-budget scenario is missing {sorted(missing)}")
        budget = LinkBudget(
            p_t=float(data["p_t"]),
            gain_s=float(data["gain_s"]),
            gain_w=float(data["gain_w"]),
            noise=float(data["noise"]),
            interference_s=float(data.get("interference_s", 0.0)),
            interference_w=float(data.get("interference_w", 0.0)),
        )
        sinr = oma_sinr(budget)

    beta = float(data.get("beta", 0.0))
    policy = None
    if "policy" in data:
        raw = data["policy"]
        if not isinstance(raw, dict):
            raise InvalidInput("policy must be a mapping")
        allowed = {"lambda_offset", "alpha_position", "tau_position"}
        bad = set(raw) - allowed
        if bad:
            raise InvalidInput(f"unknown policy keys: {sorted(bad)}")
        policy = SelectionPolicy(**{k: float(v) for k, v in raw.items()})
    return Scenario(sinr=sinr, beta=beta, policy=policy)


def load_scenario(path: str | Path) -> Scenario:
    """Read and parse a scenario file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInput(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"scenario file {path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(data)
