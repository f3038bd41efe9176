"""FastAPI application wrapping the handlers."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ParseError, SkewPbwError
from . import handlers
from .schemas import (
    CheckRequest,
    Document,
    GrRequest,
    HilbertRequest,
    MulRequest,
    NfRequest,
    OreRequest,
    PointsRequest,
    ReportRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(title="skewpbw", version=__version__)

    @app.exception_handler(ParseError)
    async def parse_error_handler(request: Request, exc: ParseError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(SkewPbwError)
    async def domain_error_handler(request: Request, exc: SkewPbwError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "kind": type(exc).__name__},
        )

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/check", response_model=Document)
    def check(req: CheckRequest) -> Document:
        return handlers.run_check(req)

    @app.post("/v1/nf", response_model=Document)
    def nf(req: NfRequest) -> Document:
        return handlers.run_nf(req)

    @app.post("/v1/mul", response_model=Document)
    def mul(req: MulRequest) -> Document:
        return handlers.run_mul(req)

    @app.post("/v1/gr", response_model=Document)
    def gr(req: GrRequest) -> Document:
        return handlers.run_gr(req)

    @app.post("/v1/ore", response_model=Document)
    def ore(req: OreRequest) -> Document:
        return handlers.run_ore(req)

    @app.post("/v1/report", response_model=Document)
    def report(req: ReportRequest) -> Document:
        return handlers.run_report(req)

    @app.post("/v1/hilbert", response_model=Document)
    def hilbert(req: HilbertRequest) -> Document:
        return handlers.run_hilbert(req)

    @app.post("/v1/points", response_model=Document)
    def points(req: PointsRequest) -> Document:
        return handlers.run_points(req)

    return app


app = create_app()
