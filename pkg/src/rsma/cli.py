"""Command-line front end.

Thin client over the service layer: every subcommand builds the same JSON
payload the HTTP endpoints take and either calls the handler in process
(default) or POSTs it to a running server (``--server URL``). Responses
print as a flat ``key value`` document; sweeps emit CSV.

Exit codes: 0 success, 2 invalid input, 3 numerical-domain error,
4 infeasible, 5 verification failure.

Subcommands:
    rates   full rate report at one configuration
    bounds  every closed-form bound plus the numerically located ones
    select  end-to-end parameter selection
    sweep   run a preset or a sweep-spec file, CSV to stdout or --out
    verify  brute-force region check against the closed forms
    serve   run the HTTP service
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .errors import InvalidInput, RsmaError
from .experiments import PRESETS
from .service import handlers, schemas

VERIFY_EXIT = 5


def _fmt(value: object) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _print_flat(data: dict, prefix: str = "") -> None:
    for key, value in data.items():
        if isinstance(value, dict):
            _print_flat(value, prefix=f"{prefix}{key}.")
        elif isinstance(value, list):
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    _print_flat(item, prefix=f"{prefix}{key}.{i}.")
                else:
                    print(f"{prefix}{key}.{i} {_fmt(item)}")
        else:
            print(f"{prefix}{key} {_fmt(value)}")


def _scenario_payload(args: argparse.Namespace) -> dict:
    if args.scenario is not None:
        if args.gamma_s_db is not None or args.gamma_w_db is not None:
            raise InvalidInput("give either --scenario or --gamma-s-db/--gamma-w-db, not both")
        try:
            data = json.loads(Path(args.scenario).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidInput(f"cannot read scenario file {args.scenario}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"scenario file {args.scenario} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidInput("scenario file must hold a JSON object")
        return data
    if args.gamma_s_db is None or args.gamma_w_db is None:
        raise InvalidInput("either --scenario or both --gamma-s-db and --gamma-w-db are required")
    return {"gamma_s_db": args.gamma_s_db, "gamma_w_db": args.gamma_w_db}


def _post(server: str | None, path: str, payload: dict, local) -> tuple[int, object]:
    """Send one request: in process by default, over HTTP with --server.

    Returns (exit_code, body); body is a dict for JSON endpoints, text for CSV.
    """
    if server is None:
        return 0, local(payload)
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    content_type = response.headers.get("content-type", "")
    body = response.json() if content_type.startswith("application/json") else response.text
    if response.status_code >= 400:
        detail = body.get("detail", body) if isinstance(body, dict) else body
        print(f"error: {detail}", file=sys.stderr)
        code = body.get("exit_code", 2) if isinstance(body, dict) else 2
        return int(code), body
    return 0, body


def _run_rates(args: argparse.Namespace) -> int:
    payload = {
        "scenario": _scenario_payload(args),
        "alpha_c": args.alpha_c,
        "lambda": args.lam,
        "tau": args.tau,
        "beta": args.beta,
    }
    code, body = _post(
        args.server,
        "/rates",
        payload,
        lambda p: handlers.rates(schemas.RatesRequest.model_validate(p)).model_dump(by_alias=True),
    )
    if code == 0:
        _print_flat(body)
    return code


def _run_bounds(args: argparse.Namespace) -> int:
    payload = {
        "scenario": _scenario_payload(args),
        "lambda": args.lam,
        "alpha_c": args.alpha_c,
        "beta": args.beta,
        "include_strict": not args.no_strict,
    }
    code, body = _post(
        args.server,
        "/bounds",
        payload,
        lambda p: handlers.bounds_report(schemas.BoundsRequest.model_validate(p)).model_dump(
            by_alias=True
        ),
    )
    if code == 0:
        _print_flat(body)
    return code


def _run_select(args: argparse.Namespace) -> int:
    payload: dict = {"scenario": _scenario_payload(args), "beta": args.beta}
    policy = {}
    if args.lambda_offset is not None:
        policy["lambda_offset"] = args.lambda_offset
    if args.alpha_position is not None:
        policy["alpha_position"] = args.alpha_position
    if args.tau_position is not None:
        policy["tau_position"] = args.tau_position
    if policy:
        payload["policy"] = policy
    code, body = _post(
        args.server,
        "/select",
        payload,
        lambda p: handlers.select(schemas.SelectRequest.model_validate(p)).model_dump(
            by_alias=True
        ),
    )
    if code == 0:
        _print_flat(body)
    return code


def _run_sweep(args: argparse.Namespace) -> int:
    payload: dict = {"workers": args.workers}
    if args.preset is not None:
        payload["preset"] = args.preset
    else:
        try:
            spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidInput(f"cannot read sweep spec {args.spec}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"sweep spec {args.spec} is not valid JSON: {exc}") from exc
        payload["spec"] = spec.get("sweeps", spec) if isinstance(spec, dict) else spec
    code, body = _post(
        args.server,
        "/sweep",
        payload,
        lambda p: handlers.sweep(schemas.SweepRequest.model_validate(p)),
    )
    if code != 0:
        return code
    if args.out is not None:
        Path(args.out).write_text(body, encoding="utf-8", newline="")
    else:
        sys.stdout.write(body)
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    payload = {
        "scenario": _scenario_payload(args),
        "beta": args.beta,
        "grid_step": args.grid_step,
        "perturb_tau_lower": args.perturb_tau_lower,
    }
    code, body = _post(
        args.server,
        "/verify",
        payload,
        lambda p: handlers.verify(schemas.VerifyRequest.model_validate(p)).model_dump(
            by_alias=True
        ),
    )
    if code != 0:
        return code
    samples = body.pop("mismatch_samples", [])
    _print_flat(body)
    for i, cell in enumerate(samples[:10]):
        print(
            f"mismatch.{i} lambda={_fmt(cell['lambda'])} "
            f"alpha_c={_fmt(cell['alpha_c'])} tau={_fmt(cell['tau'])}"
        )
    return 0 if body["passed"] else VERIFY_EXIT


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma-s-db", type=float, default=None, help="strong-user SINR in dB")
    parser.add_argument("--gamma-w-db", type=float, default=None, help="weak-user SINR in dB")
    parser.add_argument("--scenario", default=None, help="scenario JSON file")
    parser.add_argument(
        "--beta", type=float, default=None, help="cancellation imperfection in [0, 1]"
    )
    parser.add_argument("--server", default=None, help="base URL of a running service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", help="full rate report at one configuration")
    _add_scenario_flags(p)
    p.add_argument("--alpha-c", type=float, required=True, help="common-power fraction in (0, 1)")
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="strong user's private-power fraction in (0, 1)")
    p.add_argument("--tau", type=float, required=True, help="strong user's common-rate share")
    p.set_defaults(func=_run_rates)

    p = sub.add_parser("bounds", help="closed-form and numerically located bounds")
    _add_scenario_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha-c", type=float, default=None,
                   help="also report the share thresholds at this fraction")
    p.add_argument("--no-strict", action="store_true",
                   help="skip the strict lambda lower bound search")
    p.set_defaults(func=_run_bounds)

    p = sub.add_parser("select", help="end-to-end parameter selection")
    _add_scenario_flags(p)
    p.add_argument("--lambda-offset", type=float, default=None)
    p.add_argument("--alpha-position", type=float, default=None)
    p.add_argument("--tau-position", type=float, default=None)
    p.set_defaults(func=_run_select)

    p = sub.add_parser("sweep", help="run a preset or sweep-spec file, emit CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=PRESETS)
    group.add_argument("--spec", help="sweep-spec JSON file")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--server", default=None, help="base URL of a running service")
    p.set_defaults(func=_run_sweep)

    p = sub.add_parser("verify", help="brute-force region check against the closed forms")
    _add_scenario_flags(p)
    p.add_argument("--grid-step", type=float, default=0.002)
    p.add_argument("--perturb-tau-lower", type=float, default=0.0,
                   help="test hook: shift the closed-form lower threshold (negative control)")
    p.set_defaults(func=_run_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_run_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: invalid request: {exc}", file=sys.stderr)
        return 2
    except RsmaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
