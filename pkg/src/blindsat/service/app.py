"""FastAPI application factory for the blindsat service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import BlindsatError, ParseError
from .routes import router


def _error_payload(exc: BlindsatError) -> dict:
    info: dict = {"kind": exc.kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        info["position"] = exc.position
    return {"error": info}


def create_app() -> FastAPI:
    app = FastAPI(
        title="blindsat",
        version=__version__,
        description="Truth-table search workbench for propositional formulas.",
    )
    app.include_router(router, prefix="/api")

    @app.exception_handler(BlindsatError)
    async def blindsat_error(request: Request, exc: BlindsatError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_payload(exc))

    return app


app = create_app()
