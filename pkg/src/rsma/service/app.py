"""FastAPI application wrapping the core package.

Domain errors become JSON payloads ``{"error", "detail", "exit_code"}``
with a status code per error family: 400 invalid input, 422 numerical
domain, 409 infeasible, 500 internal contract violation. The verify
endpoint always answers 200; failure is carried by its ``passed`` flag.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from ..errors import Infeasible, InvalidInput, NumericalDomain, RsmaError
from ..experiments import PRESETS
from . import handlers, schemas

_STATUS_BY_ERROR = (
    (InvalidInput, 400),
    (NumericalDomain, 422),
    (Infeasible, 409),
)


def _status_for(exc: RsmaError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


def create_app() -> FastAPI:
    app = FastAPI(
        title="rsma",
        version="0.1.0",
        description=(
            "Two-user downlink rate-splitting rates, parameter bounds, "
            "feasible-region search and brute-force verification."
        ),
    )

    @app.exception_handler(RsmaError)
    async def _domain_error(_: Request, exc: RsmaError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={
                "error": type(exc).__name__,
                "detail": str(exc),
                "exit_code": exc.exit_code,
            },
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": list(PRESETS)}

    @app.post("/rates", response_model=schemas.RatesResponse)
    def rates(req: schemas.RatesRequest) -> schemas.RatesResponse:
        return handlers.rates(req)

    @app.post("/bounds", response_model=schemas.BoundsResponse)
    def bounds(req: schemas.BoundsRequest) -> schemas.BoundsResponse:
        return handlers.bounds_report(req)

    @app.post("/select", response_model=schemas.SelectResponse)
    def select(req: schemas.SelectRequest) -> schemas.SelectResponse:
        return handlers.select(req)

    @app.post("/sweep")
    def sweep(req: schemas.SweepRequest) -> PlainTextResponse:
        return PlainTextResponse(handlers.sweep(req), media_type="text/csv")

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        return handlers.verify(req)

    return app


app = create_app()
