"""HTTP surface: one POST endpoint per reasoning command."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..parsing import ParseError
from ..streams import BoundExceeded
from . import handlers
from .models import (
    AnswerStreamsRequest,
    AnswerStreamsResponse,
    ErrorBody,
    EvalRequest,
    EvalResponse,
    FixpointRequest,
    FixpointResponse,
    LevelMapRequest,
    LevelMapResponse,
    ModelCheckRequest,
    ModelCheckResponse,
    TpRequest,
    TpResponse,
    TranslateRequest,
    TranslateResponse,
    ValidateRequest,
    ValidateResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="streamfix", version=__version__)

    @app.exception_handler(ParseError)
    async def parse_error(_: Request, exc: ParseError) -> JSONResponse:
        body = ErrorBody(kind="parse", error=str(exc), line=exc.line, col=exc.col)
        return JSONResponse(status_code=400, content=body.model_dump(exclude_none=True))

    @app.exception_handler(BoundExceeded)
    async def bound_exceeded(_: Request, exc: BoundExceeded) -> JSONResponse:
        body = ErrorBody(
            kind="bound", error=str(exc), count=int(exc.count), bound=exc.bound
        )
        return JSONResponse(status_code=409, content=body.model_dump(exclude_none=True))

    @app.exception_handler(ValueError)
    async def usage_error(_: Request, exc: ValueError) -> JSONResponse:
        body = ErrorBody(kind="usage", error=str(exc))
        return JSONResponse(status_code=400, content=body.model_dump(exclude_none=True))

    @app.get("/health")
    async def health() -> dict:
        return {"engine": "streamfix", "version": __version__}

    @app.post("/validate", response_model=ValidateResponse)
    async def validate(request: ValidateRequest) -> ValidateResponse:
        return handlers.handle_validate(request)

    @app.post("/eval", response_model=EvalResponse)
    async def eval_formula(request: EvalRequest) -> EvalResponse:
        return handlers.handle_eval(request)

    @app.post("/model-check", response_model=ModelCheckResponse)
    async def model_check(request: ModelCheckRequest) -> ModelCheckResponse:
        return handlers.handle_model_check(request)

    @app.post("/tp", response_model=TpResponse)
    async def tp(request: TpRequest) -> TpResponse:
        return handlers.handle_tp(request)

    @app.post("/fixpoint", response_model=FixpointResponse)
    async def fixpoint(request: FixpointRequest) -> FixpointResponse:
        return handlers.handle_fixpoint(request)

    @app.post("/answer-streams", response_model=AnswerStreamsResponse)
    async def answer_streams(request: AnswerStreamsRequest) -> AnswerStreamsResponse:
        return handlers.handle_answer_streams(request)

    @app.post("/level-map", response_model=LevelMapResponse)
    async def level_map(request: LevelMapRequest) -> LevelMapResponse:
        return handlers.handle_level_map(request)

    @app.post("/translate-boxplus", response_model=TranslateResponse)
    async def translate_boxplus(request: TranslateRequest) -> TranslateResponse:
        return handlers.handle_translate(request)

    return app
