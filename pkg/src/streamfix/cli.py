"""Command-line client: builds service requests, resolves them in-process by
default or against a running server with --server, and renders the responses."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .parsing import ParseError
from .serialize import format_stream_text, parse_stream_text, stream_from_entries
from .service import handlers
from .service.models import (
    AnswerStreamsRequest,
    AnswerStreamsResponse,
    EvalRequest,
    EvalResponse,
    FixpointRequest,
    FixpointResponse,
    LevelMapRequest,
    LevelMapResponse,
    ModelCheckRequest,
    ModelCheckResponse,
    StreamEntry,
    TpRequest,
    TpResponse,
    TranslateRequest,
    TranslateResponse,
    ValidateRequest,
    ValidateResponse,
)
from .streams import BoundExceeded

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

BOUND_ENV = "STREAMFIX_BOUND"


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_stream(path: str) -> tuple[list[StreamEntry], frozenset[str] | None]:
    stream, gamma = parse_stream_text(_read_text(path))
    doc = [StreamEntry(t=t, atoms=sorted(stream.at(t))) for t in stream.times()]
    return doc, gamma


def _resolve_gamma(args: argparse.Namespace, file_gammas: list[tuple[str, frozenset[str]]]) -> list[str]:
    """Command-line --gamma wins over stream-file stanzas, with a warning."""
    flags = list(getattr(args, "gamma", []) or [])
    stanzas = [(path, g) for path, g in file_gammas if g is not None]
    if flags:
        for path, _ in stanzas:
            print(f"warning: ignoring gamma stanza in {path} (--gamma takes precedence)", file=sys.stderr)
        return sorted(set(flags))
    merged: set[str] = set()
    for _, g in stanzas:
        merged |= g
    return sorted(merged)


def _bound(args: argparse.Namespace) -> int | None:
    if getattr(args, "bound", None) is not None:
        return args.bound
    raw = os.environ.get(BOUND_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{BOUND_ENV} must be an integer, got {raw!r}") from None


def _dispatch(args: argparse.Namespace, path: str, request, handler, response_type):
    server = getattr(args, "server", None)
    if not server:
        return handler(request)
    import httpx

    try:
        response = httpx.post(
            server.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=120
        )
    except httpx.HTTPError as exc:
        raise CliError(f"server request failed: {exc}") from None
    if response.status_code == 200:
        return response_type.model_validate(response.json())
    try:
        body = response.json()
    except ValueError:
        raise CliError(f"server returned status {response.status_code}") from None
    code = EXIT_BOUND if body.get("kind") == "bound" else EXIT_USAGE
    raise CliError(body.get("error", f"server returned status {response.status_code}"), code)


def _stream_block(doc: list[StreamEntry]) -> str:
    stream = stream_from_entries([e.model_dump() for e in doc])
    text = format_stream_text(stream)
    return text.rstrip("\n") if text else "(empty stream)"


def _entries(doc: list[StreamEntry]) -> list[dict]:
    return [e.model_dump() for e in doc]


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _structured(meta, records: Sequence[dict]) -> list[str]:
    head = {"type": "meta", **meta.model_dump(mode="json")}
    return [_dumps(head)] + [_dumps(r) for r in records]


def _cmd_validate(args: argparse.Namespace) -> int:
    request = ValidateRequest(
        program=_read_text(args.program), at=args.at, gamma=sorted(set(args.gamma or []))
    )
    response: ValidateResponse = _dispatch(
        args, "/validate", request, handlers.handle_validate, ValidateResponse
    )
    if args.format == "structured":
        records: list[dict[str, Any]] = [
            {
                "type": "rule",
                "index": r.index,
                "text": r.text,
                "head_normal": r.head_normal,
                "head_consistent": r.head_consistent,
            }
            for r in response.rules
        ]
        records.append({"type": "verdict", "ok": response.ok})
        _emit(_structured(response.meta, records))
    else:
        for r in response.rules:
            status = "ok" if r.head_consistent else f"head not consistent at t={args.at}"
            print(f"rule {r.index}: {status}  ({r.text})")
        print(f"validation {'passed' if response.ok else 'failed'}")
    return EXIT_OK if response.ok else EXIT_NEGATIVE


def _cmd_eval(args: argparse.Namespace) -> int:
    file_gammas = []
    data_doc: list[StreamEntry] = []
    if args.data:
        data_doc, gamma = _load_stream(args.data)
        file_gammas.append((args.data, gamma))
    upper_doc = None
    if args.upper:
        upper_doc, gamma = _load_stream(args.upper)
        file_gammas.append((args.upper, gamma))
    request = EvalRequest(
        formula=args.formula,
        data=data_doc,
        at=args.at,
        gamma=_resolve_gamma(args, file_gammas),
        interval=tuple(args.interval) if args.interval else None,
        upper=upper_doc,
        bound=_bound(args),
    )
    response: EvalResponse = _dispatch(args, "/eval", request, handlers.handle_eval, EvalResponse)
    if args.format == "structured":
        record = {"type": "verdict", "value": response.verdict, "support": response.support}
        _emit(_structured(response.meta, [record]))
    else:
        print(f"verdict: {'true' if response.verdict else 'false'}")
        if response.support is not None:
            shown = f"[{response.support[0]},{response.support[1]}]" if response.support else "(empty)"
            print(f"quantifier interval: {shown}")
    return EXIT_OK if response.verdict else EXIT_NEGATIVE


def _cmd_model_check(args: argparse.Namespace) -> int:
    model_doc, model_gamma = _load_stream(args.model)
    data_doc, data_gamma = ([], None)
    if args.data:
        data_doc, data_gamma = _load_stream(args.data)
    request = ModelCheckRequest(
        program=_read_text(args.program),
        model=model_doc,
        at=args.at,
        data=data_doc,
        gamma=_resolve_gamma(args, [(args.model, model_gamma), (args.data or "", data_gamma)]),
    )
    response: ModelCheckResponse = _dispatch(
        args, "/model-check", request, handlers.handle_model_check, ModelCheckResponse
    )
    if args.format == "structured":
        _emit(_structured(response.meta, [{"type": "verdict", "value": response.verdict}]))
    else:
        print(f"verdict: {'true' if response.verdict else 'false'}")
    return EXIT_OK if response.verdict else EXIT_NEGATIVE


def _gather_tp_like(args: argparse.Namespace) -> tuple[list[StreamEntry], list[StreamEntry], list[str]]:
    model_doc, model_gamma = _load_stream(args.model)
    data_doc: list[StreamEntry] = []
    data_gamma = None
    if args.data:
        data_doc, data_gamma = _load_stream(args.data)
    gamma = _resolve_gamma(args, [(args.model, model_gamma), (args.data or "", data_gamma)])
    return model_doc, data_doc, gamma


def _cmd_tp(args: argparse.Namespace) -> int:
    model_doc, data_doc, gamma = _gather_tp_like(args)
    request = TpRequest(
        program=_read_text(args.program), model=model_doc, at=args.at, data=data_doc, gamma=gamma
    )
    response: TpResponse = _dispatch(args, "/tp", request, handlers.handle_tp, TpResponse)
    if args.format == "structured":
        _emit(_structured(response.meta, [{"type": "stream", "entries": _entries(response.result)}]))
    else:
        print(_stream_block(response.result))
    return EXIT_OK


def _cmd_fixpoint(args: argparse.Namespace) -> int:
    model_doc, data_doc, gamma = _gather_tp_like(args)
    request = FixpointRequest(
        program=_read_text(args.program),
        model=model_doc,
        at=args.at,
        data=data_doc,
        gamma=gamma,
        bound=_bound(args),
    )
    response: FixpointResponse = _dispatch(
        args, "/fixpoint", request, handlers.handle_fixpoint, FixpointResponse
    )
    if args.format == "structured":
        records = [
            {"type": "stage", "index": i, "entries": _entries(stage)}
            for i, stage in enumerate(response.stages)
        ]
        records.append({"type": "verdict", "is_answer": response.is_answer})
        _emit(_structured(response.meta, records))
    else:
        for i, stage in enumerate(response.stages):
            print(f"stage {i}:")
            print(_stream_block(stage))
        if response.is_answer:
            print("verdict: answer stream (the iteration rebuilt the model)")
        else:
            print("verdict: model but not an answer stream (the iteration stopped short)")
    return EXIT_OK if response.is_answer else EXIT_NEGATIVE


def _cmd_answer_streams(args: argparse.Namespace) -> int:
    data_doc: list[StreamEntry] = []
    data_gamma = None
    if args.data:
        data_doc, data_gamma = _load_stream(args.data)
    request = AnswerStreamsRequest(
        program=_read_text(args.program),
        at=args.at,
        data=data_doc,
        gamma=_resolve_gamma(args, [(args.data or "", data_gamma)]),
        mode=args.mode,
        interval=tuple(args.interval) if args.interval else None,
        horizon=tuple(args.horizon) if args.horizon else None,
        universe_atoms=sorted(set(args.universe_atom)) if args.universe_atom else None,
        bound=_bound(args),
    )
    response: AnswerStreamsResponse = _dispatch(
        args, "/answer-streams", request, handlers.handle_answer_streams, AnswerStreamsResponse
    )
    if args.format == "structured":
        records: list[dict[str, Any]] = [
            {
                "type": "universe",
                "atoms": response.universe_atoms,
                "horizon": response.horizon,
            }
        ]
        records += [
            {"type": "stream", "index": i + 1, "entries": _entries(s)}
            for i, s in enumerate(response.streams)
        ]
        records.append({"type": "count", "value": response.count})
        _emit(_structured(response.meta, records))
    else:
        for i, stream_doc in enumerate(response.streams, start=1):
            print(f"answer stream {i}:")
            print(_stream_block(stream_doc))
        print(f"count: {response.count}")
    return EXIT_OK


def _cmd_level_map(args: argparse.Namespace) -> int:
    model_doc, data_doc, gamma = _gather_tp_like(args)
    request = LevelMapRequest(
        program=_read_text(args.program),
        model=model_doc,
        at=args.at,
        data=data_doc,
        gamma=gamma,
        bound=_bound(args),
    )
    response: LevelMapResponse = _dispatch(
        args, "/level-map", request, handlers.handle_level_map, LevelMapResponse
    )
    if args.format == "structured":
        records = []
        if response.found and response.levels is not None:
            records += [
                {"type": "level", "index": i, "entries": _entries(level)}
                for i, level in enumerate(response.levels)
            ]
        records.append({"type": "verdict", "found": response.found})
        _emit(_structured(response.meta, records))
    else:
        if response.found and response.levels is not None:
            for i, level in enumerate(response.levels):
                print(f"level {i}:")
                print(_stream_block(level))
        else:
            print("no total level mapping (circular justification)")
    return EXIT_OK if response.found else EXIT_NEGATIVE


def _cmd_translate(args: argparse.Namespace) -> int:
    request = TranslateRequest(
        program=_read_text(args.program), interval=tuple(args.interval), at=args.at
    )
    response: TranslateResponse = _dispatch(
        args, "/translate-boxplus", request, handlers.handle_translate, TranslateResponse
    )
    if args.format == "structured":
        record = {"type": "program", "text": response.program, "marker": response.marker}
        _emit(_structured(response.meta, [record]))
    else:
        print(response.program, end="")
        print(f"% marker atom: {response.marker}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamfix", description="Reason over stream logic programs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, gamma: bool = True) -> None:
        p.add_argument("--format", choices=["text", "structured"], default="text")
        p.add_argument("--server", metavar="URL", help="POST to a running service instead of in-process")
        if gamma:
            p.add_argument("--gamma", action="append", default=[], metavar="ATOM",
                           help="background atom, repeatable; overrides file stanzas")

    p = sub.add_parser("validate", help="check rule heads at a time point")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    common(p)
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser("eval", help="evaluate a formula against a stream")
    p.add_argument("formula")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    p.add_argument("--interval", nargs=2, type=int, metavar=("LO", "HI"),
                   help="evaluate with quantifiers over this fixed interval")
    p.add_argument("--upper", metavar="PATH",
                   help="three-valued evaluation with --data as lower and this as upper bound")
    p.add_argument("--bound", type=int)
    common(p)
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("model-check", help="is the stream a t-model of the program")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    common(p)
    p.set_defaults(run=_cmd_model_check)

    p = sub.add_parser("tp", help="one consequence step on the model")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    common(p)
    p.set_defaults(run=_cmd_tp)

    p = sub.add_parser("fixpoint", help="iterate the bounded step from empty under the model")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    p.add_argument("--bound", type=int)
    common(p)
    p.set_defaults(run=_cmd_fixpoint)

    p = sub.add_parser("answer-streams", help="enumerate answer streams in a universe")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    p.add_argument("--mode", choices=["flp", "fixpoint", "fixed-interval"], default="flp")
    p.add_argument("--interval", nargs=2, type=int, metavar=("LO", "HI"),
                   help="evaluation interval for fixed-interval mode")
    p.add_argument("--horizon", nargs=2, type=int, metavar=("LO", "HI"),
                   help="override the universe horizon")
    p.add_argument("--universe-atom", action="append", metavar="ATOM",
                   help="override the universe atoms, repeatable")
    p.add_argument("--bound", type=int)
    common(p)
    p.set_defaults(run=_cmd_answer_streams)

    p = sub.add_parser("level-map", help="extract the level mapping of a model")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--data", metavar="PATH")
    p.add_argument("--at", required=True, type=int)
    p.add_argument("--bound", type=int)
    common(p)
    p.set_defaults(run=_cmd_level_map)

    p = sub.add_parser("translate-boxplus", help="rewrite fixed-interval evaluation into window form")
    p.add_argument("--program", required=True, metavar="PATH")
    p.add_argument("--interval", nargs=2, type=int, required=True, metavar=("LO", "HI"))
    p.add_argument("--at", required=True, type=int)
    common(p, gamma=False)
    p.set_defaults(run=_cmd_translate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
