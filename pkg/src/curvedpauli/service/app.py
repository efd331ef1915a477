"""HTTP front end: three POST routes around the in-process handlers.

Error mapping mirrors the CLI exit codes: domain and grid problems are
400 (config error), an unquantized-spectrum request is 422 with an
"unsupported" marker so clients can tell it apart from schema errors.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import CurvedPauliError, NotQuantizedError
from .handlers import run_eval, run_spectrum, run_verify
from .schemas import (
    EvalRequest,
    EvalResponse,
    SpectrumRequest,
    SpectrumResponse,
    VerifyReport,
    VerifyRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(title="curvedpauli")

    @app.exception_handler(NotQuantizedError)
    async def _unsupported(request: Request, exc: NotQuantizedError) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"error": "unsupported", "detail": str(exc)}
        )

    @app.exception_handler(CurvedPauliError)
    async def _bad_request(request: Request, exc: CurvedPauliError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "invalid-config", "detail": str(exc)}
        )

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum_route(req: SpectrumRequest) -> SpectrumResponse:
        return run_spectrum(req)

    @app.post("/eval", response_model=EvalResponse)
    def eval_route(req: EvalRequest) -> EvalResponse:
        return run_eval(req)

    @app.post("/verify", response_model=VerifyReport)
    def verify_route(req: VerifyRequest) -> VerifyReport:
        return run_verify(req)

    return app


app = create_app()
