"""Deterministic parameter sweeps emitting CSV.

A sweep varies exactly one of {lambda, alpha_c, tau, beta} over a
(start, end, step) range (end exclusive) while the others are held fixed
or, when ``select_missing`` is set, chosen per row by the midpoint
selection recipe. Each output row carries the variable value, the
requested columns, a feasibility flag and a final error column.

Rows where selection fails (no feasible interval, or the pinned fraction
falls outside it) keep their parameter echoes, leave every derived cell
empty and set the flag false with an empty error: plots that zero such
regions out are a presentation convention, not data. Rows hitting a
numerical-domain error record the error message instead and are likewise
flagged false; they never abort the sweep.

CSV contract: UTF-8, header row, comma separated, '.' decimal separator,
12 significant digits, empty cell for undefined values, booleans as
``true``/``false``, final column ``error`` (empty string when none). Output
is byte-identical for identical specs, regardless of the worker count
(rows are independent; ordering is by variable value ascending).

The named presets fig2 through fig7 live as JSON files in the package's
``scenarios`` directory and reproduce the reference sweeps: the cubic
landscape (fig2), the alpha interval vs lambda (fig3), rates vs lambda
with per-row selection (fig4), rates vs alpha_c at lambda = 0.99 (fig5),
the share window vs alpha_c (fig6), and rates vs beta at the pinned
operating point (fig7).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import bounds, feasibility
from .errors import DenominatorSignViolation, Infeasible, InvalidInput, RsmaError
from .oracle import RegionReport
from .rate_model import RateReport, RsmaParams, SinrPair, rsma_rates
from .scenario import scenario_from_dict

PARAM_KEYS = ("lambda", "alpha_c", "tau", "beta")
PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

_ECHO_COLUMNS = set(PARAM_KEYS)


def _axis_values(var: str, rng: tuple[float, float, float]) -> np.ndarray:
    start, end, step = rng
    if not all(math.isfinite(v) for v in rng):
        raise InvalidInput(f"range must be finite, got {rng!r}")
    if step <= 0.0 or end <= start:
        raise InvalidInput(f"range must satisfy start < end and step > 0, got {rng!r}")
    n = int(math.ceil((end - start) / step - 1e-9))
    values = start + step * np.arange(n)
    if var == "beta":
        if start < 0.0 or np.any(values > 1.0):
            raise InvalidInput(f"beta range must stay within [0, 1], got {rng!r}")
    else:
        if start <= 0.0 or np.any(values >= 1.0):
            raise InvalidInput(f"{var} range must stay within (0, 1), got {rng!r}")
    return values


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: scenario, the variable and its range, fixed values, outputs."""

    scenario: SinrPair
    variable: str
    var_range: tuple[float, float, float]
    outputs: tuple[str, ...]
    fixed: dict[str, float] = field(default_factory=dict)
    select_missing: bool = False
    flag: str = "rates_beat_oma"

    def __post_init__(self) -> None:
        if self.variable not in PARAM_KEYS:
            raise InvalidInput(f"variable must be one of {PARAM_KEYS}, got {self.variable!r}")
        if self.variable in self.fixed:
            raise InvalidInput(f"variable {self.variable!r} must not also be fixed")
        unknown = set(self.fixed) - set(PARAM_KEYS)
        if unknown:
            raise InvalidInput(f"unknown fixed parameters: {sorted(unknown)}")
        _axis_values(self.variable, self.var_range)
        if self.flag not in _FLAG_POLICIES:
            raise InvalidInput(f"unknown flag policy {self.flag!r}")
        available = set(self.fixed) | {self.variable}
        if self.select_missing:
            if "beta" not in available:
                raise InvalidInput("beta is never selected; fix it or sweep it")
            available |= {"alpha_c", "tau"}
        for name in self.outputs:
            if name not in _COLUMNS:
                raise InvalidInput(f"unknown output column {name!r}")
            needs = _COLUMNS[name][0]
            if not needs <= available:
                raise InvalidInput(
                    f"column {name!r} needs {sorted(needs - available)}; "
                    "fix them or enable select_missing"
                )
        flag_needs = _FLAG_POLICIES[self.flag][0]
        if not flag_needs <= available:
            raise InvalidInput(
                f"flag {self.flag!r} needs {sorted(flag_needs - available)}"
            )

    @property
    def columns(self) -> tuple[str, ...]:
        """Final column layout: variable echo, outputs, flag, error."""
        cols = list(self.outputs)
        if self.variable not in cols:
            cols.insert(0, self.variable)
        return tuple(cols) + ("feasible", "error")


@dataclass(frozen=True)
class SweepTable:
    """Computed sweep rows, ready for CSV serialisation."""

    columns: tuple[str, ...]
    rows: tuple[dict, ...]


class _Row:
    """Lazy per-row evaluation context with memoised intermediates."""

    def __init__(self, engine: "_Engine", params: dict[str, float]):
        self.engine = engine
        self.params = params
        self._tb: bounds.TauBounds | None = None
        self._report: RateReport | None = None

    @property
    def sinr(self) -> SinrPair:
        return self.engine.spec.scenario

    def tau_bounds(self) -> bounds.TauBounds:
        if self._tb is None:
            self._tb = bounds.tau_bounds(
                self.sinr, self.params["alpha_c"], self.params["lambda"], self.params["beta"]
            )
        return self._tb

    def report(self) -> RateReport:
        if self._report is None:
            self._report = rsma_rates(
                self.sinr,
                RsmaParams(
                    alpha_c=self.params["alpha_c"],
                    lam=self.params["lambda"],
                    tau=self.params["tau"],
                    beta=self.params["beta"],
                ),
            )
        return self._report

    def interval(self) -> feasibility.AlphaInterval:
        return self.engine.interval(self.params["lambda"], self.params["beta"])

    def coeffs(self) -> bounds.CubicCoeffs:
        return self.engine.coeffs(self.params["lambda"], self.params["beta"])


_COLUMNS: dict[str, tuple[frozenset, Callable[[_Row], object]]] = {
    "lambda": (frozenset({"lambda"}), lambda r: r.params.get("lambda")),
    "alpha_c": (frozenset({"alpha_c"}), lambda r: r.params.get("alpha_c")),
    "tau": (frozenset({"tau"}), lambda r: r.params.get("tau")),
    "beta": (frozenset({"beta"}), lambda r: r.params.get("beta")),
    "r_oma_s": (frozenset({"beta"}), lambda r: 0.5 * math.log2(1.0 + r.sinr.gamma_s)),
    "r_oma_w": (frozenset({"beta"}), lambda r: 0.5 * math.log2(1.0 + r.sinr.gamma_w)),
    "r_comm": (frozenset(PARAM_KEYS), lambda r: r.report().r_comm),
    "r_comm_s": (frozenset(PARAM_KEYS), lambda r: r.report().r_comm_s),
    "r_comm_w": (frozenset(PARAM_KEYS), lambda r: r.report().r_comm_w),
    "r_priv_s": (frozenset(PARAM_KEYS), lambda r: r.report().r_priv_s),
    "r_priv_w": (frozenset(PARAM_KEYS), lambda r: r.report().r_priv_w),
    "r_rsma_s": (frozenset(PARAM_KEYS), lambda r: r.report().r_rsma_s),
    "r_rsma_w": (frozenset(PARAM_KEYS), lambda r: r.report().r_rsma_w),
    "sum_rsma": (frozenset(PARAM_KEYS), lambda r: r.report().sum_rsma),
    "sum_oma": (frozenset(PARAM_KEYS), lambda r: r.report().sum_oma),
    "tau_lower": (frozenset({"alpha_c", "lambda", "beta"}), lambda r: r.tau_bounds().lower),
    "tau_upper": (frozenset({"alpha_c", "lambda", "beta"}), lambda r: r.tau_bounds().upper),
    "alpha_lb": (
        frozenset({"lambda", "beta"}),
        lambda r: bounds.alpha_lower(r.sinr, r.params["lambda"], r.params["beta"]),
    ),
    "alpha_soft_ub": (
        frozenset({"lambda", "beta"}),
        lambda r: bounds.alpha_soft_upper(r.sinr, r.params["lambda"], r.params["beta"]),
    ),
    "alpha_ub": (
        frozenset({"lambda", "beta"}),
        lambda r: r.interval().ub if r.interval().present else None,
    ),
    "cubic_value": (
        frozenset({"alpha_c", "lambda", "beta"}),
        lambda r: float(r.coeffs().evaluate(r.params["alpha_c"])),
    ),
    "lambda_soft_lower": (
        frozenset({"beta"}),
        lambda r: bounds.lambda_soft_lower(r.sinr, r.params["beta"]).soft_lower,
    ),
    "lambda_strict_lower": (
        frozenset({"beta"}),
        lambda r: r.engine.strict_lambda(r.params["beta"]),
    ),
}


def _flag_rates(row: _Row) -> bool:
    report = row.report()
    return report.r_rsma_s > report.r_oma_s and report.r_rsma_w > report.r_oma_w


def _flag_tau_window(row: _Row) -> bool:
    return row.tau_bounds().feasible


def _flag_alpha_in_region(row: _Row) -> bool:
    alpha_c = row.params["alpha_c"]
    alb = bounds.alpha_lower(row.sinr, row.params["lambda"], row.params["beta"])
    return alpha_c > alb and float(row.coeffs().evaluate(alpha_c)) < 0.0


def _flag_interval_present(row: _Row) -> bool:
    return row.interval().present


_FLAG_POLICIES: dict[str, tuple[frozenset, Callable[[_Row], bool]]] = {
    "rates_beat_oma": (frozenset(PARAM_KEYS), _flag_rates),
    "tau_window_nonempty": (frozenset({"alpha_c", "lambda", "beta"}), _flag_tau_window),
    "alpha_in_region": (frozenset({"alpha_c", "lambda", "beta"}), _flag_alpha_in_region),
    "interval_present": (frozenset({"lambda", "beta"}), _flag_interval_present),
}


class _Engine:
    """Shared per-sweep caches; values are pure functions of their keys."""

    def __init__(self, spec: SweepSpec):
        self.spec = spec
        self._intervals: dict[tuple[float, float], feasibility.AlphaInterval] = {}
        self._coeffs: dict[tuple[float, float], bounds.CubicCoeffs] = {}
        self._strict: dict[float, float] = {}

    def interval(self, lam: float, beta: float) -> feasibility.AlphaInterval:
        key = (lam, beta)
        if key not in self._intervals:
            self._intervals[key] = feasibility.alpha_feasible_interval(self.spec.scenario, lam, beta)
        return self._intervals[key]

    def coeffs(self, lam: float, beta: float) -> bounds.CubicCoeffs:
        key = (lam, beta)
        if key not in self._coeffs:
            self._coeffs[key] = bounds.cubic_coeffs(self.spec.scenario, lam, beta)
        return self._coeffs[key]

    def strict_lambda(self, beta: float) -> float:
        if beta not in self._strict:
            self._strict[beta] = feasibility.lambda_strict_lower(self.spec.scenario, beta)
        return self._strict[beta]

    def _select(self, row: _Row) -> None:
        """Fill unfixed alpha_c/tau by the midpoint recipe; gate pinned alpha_c."""
        interval = row.interval()
        if not interval.present:
            raise Infeasible("no feasible common-power interval at this row")
        if "alpha_c" not in row.params:
            row.params["alpha_c"] = interval.lb + 0.5 * (interval.ub - interval.lb)
        elif not interval.lb < row.params["alpha_c"] < interval.ub:
            raise Infeasible("alpha_c outside the feasible interval")
        if "tau" not in row.params:
            lo, hi = row.tau_bounds().window
            if not lo < hi:
                raise Infeasible("empty share window at this row")
            row.params["tau"] = lo + 0.5 * (hi - lo)

    def compute_row(self, value: float) -> dict:
        spec = self.spec
        params = dict(spec.fixed)
        params[spec.variable] = float(value)
        row = _Row(self, params)
        cells: dict[str, object] = {}
        feasible = False
        failed = False
        error = ""
        try:
            if spec.select_missing:
                self._select(row)
            for name in spec.columns[:-2]:
                cells[name] = _COLUMNS[name][1](row)
            feasible = _FLAG_POLICIES[spec.flag][1](row)
        except (Infeasible, DenominatorSignViolation):
            failed = True
        except RsmaError as exc:
            failed = True
            error = f"{type(exc).__name__}: {exc}"
        if failed:
            # Failed rows keep their parameter echoes and blank every derived cell.
            cells = {
                name: row.params.get(name) if name in _ECHO_COLUMNS else None
                for name in spec.columns[:-2]
            }
        cells["feasible"] = bool(feasible)
        cells["error"] = error
        return cells


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Compute all rows of one sweep; the worker count never changes the result."""
    if workers < 1:
        raise InvalidInput(f"workers must be >= 1, got {workers!r}")
    engine = _Engine(spec)
    values = _axis_values(spec.variable, spec.var_range)
    if workers == 1:
        rows = [engine.compute_row(v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(engine.compute_row, values))
    return SweepTable(columns=spec.columns, rows=tuple(rows))


def run_sweeps(specs: list[SweepSpec], workers: int = 1) -> SweepTable:
    """Run several sweeps with identical column layouts and stack their rows."""
    if not specs:
        raise InvalidInput("no sweeps given")
    layouts = {spec.columns for spec in specs}
    if len(layouts) != 1:
        raise InvalidInput("stacked sweeps must share one column layout")
    rows: list[dict] = []
    for spec in specs:
        rows.extend(run_sweep(spec, workers=workers).rows)
    return SweepTable(columns=specs[0].columns, rows=tuple(rows))


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float, np.floating)):
        return format(float(value), ".12g")
    return str(value).replace(",", ";").replace("\n", " ")


def to_csv(table: SweepTable) -> str:
    """Serialise a sweep table under the CSV contract."""
    lines = [",".join(table.columns)]
    for row in table.rows:
        lines.append(",".join(_format_cell(row.get(name)) for name in table.columns))
    return "\n".join(lines) + "\n"


def region_report_csv(report: RegionReport) -> str:
    """Serialise a region report's feasible share spans under the CSV contract."""
    lines = ["lambda,alpha_c,tau_min,tau_max,error"]
    for lam, alpha_c, t_min, t_max in report.tau_spans:
        lines.append(
            ",".join(_format_cell(v) for v in (lam, alpha_c, t_min, t_max)) + ","
        )
    return "\n".join(lines) + "\n"


def sweep_spec_from_dict(data: dict) -> SweepSpec:
    """Build a sweep spec from its JSON form."""
    if not isinstance(data, dict):
        raise InvalidInput(f"sweep spec must be a mapping, got {type(data).__name__}")
    required = {"scenario", "variable", "range", "outputs"}
    missing = required - set(data)
    if missing:
        raise InvalidInput(f"sweep spec is missing {sorted(missing)}")
    scenario_raw = data["scenario"]
    if isinstance(scenario_raw, dict) and ("beta" in scenario_raw or "policy" in scenario_raw):
        raise InvalidInput("sweep scenarios carry only the link; put beta under 'fixed'")
    rng = data["range"]
    if not isinstance(rng, (list, tuple)) or len(rng) != 3:
        raise InvalidInput(f"range must be [start, end, step], got {rng!r}")
    return SweepSpec(
        scenario=scenario_from_dict(scenario_raw).sinr,
        variable=str(data["variable"]),
        var_range=tuple(float(v) for v in rng),
        outputs=tuple(str(name) for name in data["outputs"]),
        fixed={str(k): float(v) for k, v in dict(data.get("fixed", {})).items()},
        select_missing=bool(data.get("select_missing", False)),
        flag=str(data.get("flag", "rates_beat_oma")),
    )


def load_preset(name: str) -> list[SweepSpec]:
    """Load a named preset from the packaged scenario directory."""
    if name not in PRESETS:
        raise InvalidInput(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("rsma.scenarios").joinpath(f"{name}.json").read_text(encoding="utf-8")
    payload = json.loads(text)
    return [sweep_spec_from_dict(d) for d in payload["sweeps"]]


def run_preset(name: str, workers: int = 1) -> SweepTable:
    """Run a named preset; stacked presets concatenate in file order."""
    return run_sweeps(load_preset(name), workers=workers)


def preset_csv(name: str, workers: int = 1) -> str:
    return to_csv(run_preset(name, workers=workers))
