"""Request orchestration: parse payloads, call the core, shape responses.

Core exceptions (ParseError, BoundExceeded, ValueError) propagate to the
caller; the HTTP app and the CLI each map them to their own error surface.
"""

from __future__ import annotations

from .. import __version__
from ..answer import (
    default_universe,
    enumerate_answer_streams,
    is_t_model,
    boxplus_translate,
    Universe,
)
from ..entailment import DEFAULT_COMPLETION_BOUND, entails, entails3, entails_fixed
from ..formulas import (
    Box,
    Diamond,
    check_t_consistent,
    format_formula,
    format_program,
    format_rule,
    walk,
)
from ..levelmap import extract_level_mapping
from ..operators import phi_dagger, tp
from ..parsing import parse_formula, parse_program
from ..serialize import stream_from_entries, stream_to_entries
from ..streams import Interval, Stream, ThreeValuedStream
from .models import (
    AnswerStreamsRequest,
    AnswerStreamsResponse,
    EvalRequest,
    EvalResponse,
    FixpointRequest,
    FixpointResponse,
    LevelMapRequest,
    LevelMapResponse,
    Meta,
    ModelCheckRequest,
    ModelCheckResponse,
    RuleReport,
    StreamEntry,
    TpRequest,
    TpResponse,
    TranslateRequest,
    TranslateResponse,
    ValidateRequest,
    ValidateResponse,
)


def _meta(command: str, request) -> Meta:
    return Meta(
        engine="streamfix",
        version=__version__,
        command=command,
        config=request.model_dump(mode="json"),
    )


def _stream(doc: list[StreamEntry]) -> Stream:
    return stream_from_entries([e.model_dump() for e in doc])


def _doc(stream: Stream) -> list[StreamEntry]:
    return [StreamEntry(**entry) for entry in stream_to_entries(stream)]


def _interval(pair: tuple[int, int]) -> Interval:
    lo, hi = pair
    if lo > hi:
        raise ValueError(f"interval bounds must satisfy lo <= hi, got [{lo},{hi}]")
    if lo < 1:
        raise ValueError(f"interval must start at 1 or later, got [{lo},{hi}]")
    return Interval(lo, hi)


def handle_validate(request: ValidateRequest) -> ValidateResponse:
    program = parse_program(request.program)
    gamma = frozenset(request.gamma)
    reports = []
    for index, rule in enumerate(program, start=1):
        consistent = check_t_consistent(rule.head, request.at, gamma)
        reports.append(
            RuleReport(
                index=index,
                text=format_rule(rule),
                head=format_formula(rule.head),
                head_normal=True,
                head_consistent=consistent,
            )
        )
    return ValidateResponse(
        meta=_meta("validate", request),
        ok=all(r.head_consistent for r in reports),
        rules=reports,
    )


def handle_eval(request: EvalRequest) -> EvalResponse:
    formula = parse_formula(request.formula)
    data = _stream(request.data)
    gamma = frozenset(request.gamma)
    bound = request.bound or DEFAULT_COMPLETION_BOUND
    if request.interval is not None:
        interval = _interval(request.interval)
        verdict = entails_fixed(data, interval, request.at, formula, gamma)
        used = interval
    elif request.upper is not None:
        pair = ThreeValuedStream(data, _stream(request.upper))
        verdict = entails3(pair, request.at, formula, gamma, bound)
        used = pair.upper.support()
    else:
        verdict = entails(data, request.at, formula, gamma)
        used = data.support()
    quantified = any(isinstance(node, (Box, Diamond)) for node in walk(formula))
    support = None
    if quantified:
        support = [] if used.is_empty else [used.lo, int(used.hi)]
    return EvalResponse(meta=_meta("eval", request), verdict=verdict, support=support)


def handle_model_check(request: ModelCheckRequest) -> ModelCheckResponse:
    program = parse_program(request.program)
    verdict = is_t_model(
        program,
        _stream(request.model),
        request.at,
        _stream(request.data),
        frozenset(request.gamma),
    )
    return ModelCheckResponse(meta=_meta("model-check", request), verdict=verdict)


def handle_tp(request: TpRequest) -> TpResponse:
    program = parse_program(request.program)
    result = tp(
        program,
        _stream(request.data),
        frozenset(request.gamma),
        request.at,
        _stream(request.model),
    )
    return TpResponse(meta=_meta("tp", request), result=_doc(result))


def handle_fixpoint(request: FixpointRequest) -> FixpointResponse:
    program = parse_program(request.program)
    model = _stream(request.model)
    data = _stream(request.data)
    gamma = frozenset(request.gamma)
    if not is_t_model(program, model, request.at, data, gamma):
        raise ValueError("--model is not a t-model of the program at the evaluation point")
    trace = phi_dagger(
        program, data, gamma, request.at, model, request.bound or DEFAULT_COMPLETION_BOUND
    )
    return FixpointResponse(
        meta=_meta("fixpoint", request),
        stages=[_doc(stage) for stage in trace.stages],
        fixpoint=_doc(trace.fixpoint),
        is_answer=trace.fixpoint == model,
    )


def handle_answer_streams(request: AnswerStreamsRequest) -> AnswerStreamsResponse:
    program = parse_program(request.program)
    data = _stream(request.data)
    gamma = frozenset(request.gamma)
    interval = _interval(request.interval) if request.interval is not None else None
    if request.horizon is None or request.universe_atoms is None:
        default = default_universe(
            program,
            request.at,
            data,
            gamma,
            interval if request.mode == "fixed-interval" else None,
            max_cells=10**9,  # the enumeration applies the real cap
        )
    atoms = (
        frozenset(request.universe_atoms)
        if request.universe_atoms is not None
        else default.atoms
    )
    horizon = _interval(request.horizon) if request.horizon is not None else default.horizon
    universe = Universe(atoms, horizon)
    kwargs = {}
    if request.bound is not None:
        kwargs["bound"] = request.bound
    streams = enumerate_answer_streams(
        program,
        request.at,
        data,
        gamma,
        universe=universe,
        mode=request.mode,
        interval=interval,
        **kwargs,
    )
    return AnswerStreamsResponse(
        meta=_meta("answer-streams", request),
        count=len(streams),
        streams=[_doc(s) for s in streams],
        universe_atoms=sorted(universe.atoms),
        horizon=[universe.horizon.lo, int(universe.horizon.hi)],
    )


def handle_level_map(request: LevelMapRequest) -> LevelMapResponse:
    program = parse_program(request.program)
    model = _stream(request.model)
    data = _stream(request.data)
    gamma = frozenset(request.gamma)
    if not is_t_model(program, model, request.at, data, gamma):
        raise ValueError("--model is not a t-model of the program at the evaluation point")
    partitioning = extract_level_mapping(
        program, data, gamma, request.at, model, request.bound or DEFAULT_COMPLETION_BOUND
    )
    if partitioning is None:
        return LevelMapResponse(meta=_meta("level-map", request), found=False, levels=None)
    return LevelMapResponse(
        meta=_meta("level-map", request),
        found=True,
        levels=[_doc(part) for part in partitioning.parts],
    )


def handle_translate(request: TranslateRequest) -> TranslateResponse:
    program = parse_program(request.program)
    translated, marker = boxplus_translate(program, _interval(request.interval), request.at)
    return TranslateResponse(
        meta=_meta("translate-boxplus", request),
        program=format_program(translated),
        marker=marker,
    )
