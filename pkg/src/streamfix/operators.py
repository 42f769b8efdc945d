"""Model-building operators: derived cells, box elimination, and fixed points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .entailment import DEFAULT_COMPLETION_BOUND, entails, entails3
from .formulas import (
    And,
    At,
    Atom,
    Box,
    Formula,
    Program,
    Rule,
    Top,
    Window,
    classify,
    conjoin,
)
from .streams import Interval, Stream, ThreeValuedStream, window_interval


def _collect_cells(
    hull: Interval, t: int, formula: Formula, gamma: frozenset[str], out: list[tuple[int, str]]
) -> None:
    """Cells a normal formula demands at t, quantifying boxes over the known interval."""
    if isinstance(formula, Atom):
        if formula.name not in gamma:
            out.append((t, formula.name))
    elif isinstance(formula, Top):
        pass
    elif isinstance(formula, And):
        _collect_cells(hull, t, formula.left, gamma, out)
        _collect_cells(hull, t, formula.right, gamma, out)
    elif isinstance(formula, Box):
        for u in hull.points():
            _collect_cells(hull, u, formula.sub, gamma, out)
    elif isinstance(formula, At):
        _collect_cells(hull, formula.time, formula.sub, gamma, out)
    elif isinstance(formula, Window):
        narrowed = hull.intersect(window_interval(t, formula.left, formula.right))
        _collect_cells(narrowed, t, formula.sub, gamma, out)
    else:
        raise ValueError("derived cells are defined for normal formulas only")


def partial_model(stream: Stream, t: int, formula: Formula, gamma: frozenset[str] = frozenset()) -> Stream:
    """One derivation pass: the cells the formula asserts, read against the stream's interval."""
    if not classify(formula).normal:
        raise ValueError("derived cells are defined for normal formulas only")
    cells: list[tuple[int, str]] = []
    _collect_cells(stream.support(), t, formula, gamma, cells)
    return Stream.from_cells(cells)


def model_op(stream: Stream, t: int, formula: Formula, gamma: frozenset[str] = frozenset()) -> Stream:
    """Two derivation passes: the second reads boxes against the first pass's own interval."""
    first = partial_model(stream, t, formula, gamma)
    return partial_model(first, t, formula, gamma)


def _translate(hull: Interval, t: int, formula: Formula) -> Formula:
    if isinstance(formula, (Atom, Top)):
        return formula
    if isinstance(formula, And):
        return And(_translate(hull, t, formula.left), _translate(hull, t, formula.right))
    if isinstance(formula, At):
        return At(formula.time, _translate(hull, formula.time, formula.sub))
    if isinstance(formula, Window):
        narrowed = hull.intersect(window_interval(t, formula.left, formula.right))
        return Window(formula.left, formula.right, _translate(narrowed, t, formula.sub))
    if isinstance(formula, Box):
        return conjoin(At(u, _translate(hull, u, formula.sub)) for u in hull.points())
    raise ValueError("box elimination is defined for normal formulas only")


def translate(formula: Formula, stream: Stream, t: int) -> Formula:
    """Rewrite each box into the @-conjunction over the stream's known interval."""
    if not classify(formula).normal:
        raise ValueError("box elimination is defined for normal formulas only")
    return _translate(stream.support(), t, formula)


def _fired_heads(
    rules: Sequence[Rule], stream: Stream, t: int, gamma: frozenset[str]
) -> Formula:
    return conjoin(rule.head for rule in rules if entails(stream, t, rule.body_formula(), gamma))


def tp_rules(
    rules: Sequence[Rule], data: Stream, gamma: frozenset[str], t: int, stream: Stream
) -> Stream:
    """One consequence step over an explicit rule sequence (possibly a reduct)."""
    if not data.is_substream(stream):
        raise ValueError("the data part must be a substream of the interpretation")
    heads = _fired_heads(rules, stream, t, gamma)
    return data | model_op(stream, t, heads, gamma)


def tp(program: Program, data: Stream, gamma: frozenset[str], t: int, stream: Stream) -> Stream:
    """Immediate-consequence step: data plus the derived cells of all fired heads."""
    return tp_rules(program.rules, data, gamma, t, stream)


def phi(
    program: Program,
    data: Stream,
    gamma: frozenset[str],
    t: int,
    pair: ThreeValuedStream,
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> Stream:
    """Three-valued consequence step: fires bodies certain under the pair, derives on the lower bound."""
    if not data.is_substream(pair.upper):
        raise ValueError("the data part must be a substream of the upper bound")
    fired = [r.head for r in program if entails3(pair, t, r.body_formula(), gamma, bound)]
    return data | model_op(pair.lower, t, conjoin(fired), gamma)


@dataclass(frozen=True)
class FixpointTrace:
    """Successive stages of the bounded fixed-point iteration, ending in a repeat."""

    stages: tuple[Stream, ...]

    @property
    def fixpoint(self) -> Stream:
        return self.stages[-1]


def phi_dagger(
    program: Program,
    data: Stream,
    gamma: frozenset[str],
    t: int,
    model: Stream,
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> FixpointTrace:
    """Least fixed point of the three-valued step bounded above by a model, from empty."""
    if not tp(program, data, gamma, t, model).is_substream(model):
        raise ValueError("the upper bound must be a t-model of the program")
    current = Stream()
    stages = [current]
    for _ in range(model.cell_count + 2):
        nxt = phi(program, data, gamma, t, ThreeValuedStream(current, model), bound)
        stages.append(nxt)
        if nxt == current:
            return FixpointTrace(tuple(stages))
        current = nxt
    raise AssertionError("fixed-point iteration failed to converge")
