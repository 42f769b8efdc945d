"""Request and response bodies for the reasoning service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

Mode = Literal["flp", "fixpoint", "fixed-interval"]


class StreamEntry(BaseModel):
    t: int = Field(ge=1)
    atoms: list[str]


StreamDoc = list[StreamEntry]


class Meta(BaseModel):
    engine: str
    version: str
    command: str
    config: dict[str, Any]


class ValidateRequest(BaseModel):
    program: str
    at: int = Field(ge=1)
    gamma: list[str] = []


class RuleReport(BaseModel):
    index: int
    text: str
    head: str
    head_normal: bool
    head_consistent: bool


class ValidateResponse(BaseModel):
    meta: Meta
    ok: bool
    rules: list[RuleReport]


class EvalRequest(BaseModel):
    formula: str
    data: StreamDoc = []
    at: int = Field(ge=1)
    gamma: list[str] = []
    interval: tuple[int, int] | None = None  # fixed-interval evaluation
    upper: StreamDoc | None = None  # three-valued evaluation between data and upper
    bound: int | None = None


class EvalResponse(BaseModel):
    meta: Meta
    verdict: bool
    support: list[int] | None  # interval the box/diamond quantifiers ranged over


class ModelCheckRequest(BaseModel):
    program: str
    model: StreamDoc
    at: int = Field(ge=1)
    data: StreamDoc = []
    gamma: list[str] = []


class ModelCheckResponse(BaseModel):
    meta: Meta
    verdict: bool


class TpRequest(BaseModel):
    program: str
    model: StreamDoc
    at: int = Field(ge=1)
    data: StreamDoc = []
    gamma: list[str] = []


class TpResponse(BaseModel):
    meta: Meta
    result: StreamDoc


class FixpointRequest(BaseModel):
    program: str
    model: StreamDoc
    at: int = Field(ge=1)
    data: StreamDoc = []
    gamma: list[str] = []
    bound: int | None = None


class FixpointResponse(BaseModel):
    meta: Meta
    stages: list[StreamDoc]
    fixpoint: StreamDoc
    is_answer: bool


class AnswerStreamsRequest(BaseModel):
    program: str
    at: int = Field(ge=1)
    data: StreamDoc = []
    gamma: list[str] = []
    mode: Mode = "flp"
    interval: tuple[int, int] | None = None
    horizon: tuple[int, int] | None = None
    universe_atoms: list[str] | None = None
    bound: int | None = None


class AnswerStreamsResponse(BaseModel):
    meta: Meta
    count: int
    streams: list[StreamDoc]
    universe_atoms: list[str]
    horizon: list[int]


class LevelMapRequest(BaseModel):
    program: str
    model: StreamDoc
    at: int = Field(ge=1)
    data: StreamDoc = []
    gamma: list[str] = []
    bound: int | None = None


class LevelMapResponse(BaseModel):
    meta: Meta
    found: bool
    levels: list[StreamDoc] | None  # includes the empty base level when found


class TranslateRequest(BaseModel):
    program: str
    interval: tuple[int, int]
    at: int = Field(ge=1)


class TranslateResponse(BaseModel):
    meta: Meta
    program: str
    marker: str


class ErrorBody(BaseModel):
    kind: Literal["parse", "usage", "bound"]
    error: str
    line: int | None = None
    col: int | None = None
    count: int | None = None
    bound: int | None = None
