"""Level mappings: stratify a model into layers justified by earlier layers only."""

from __future__ import annotations

from dataclasses import dataclass

from .answer import is_phi_answer_stream, is_t_answer_stream, is_t_model
from .entailment import DEFAULT_COMPLETION_BOUND, entails3
from .formulas import Program, conjoin
from .operators import model_op, phi, phi_dagger
from .streams import Cell, Stream, ThreeValuedStream

DEFAULT_MINIMALITY_BOUND = 24


@dataclass(frozen=True)
class Partitioning:
    """Level 0 is empty; later levels are nonempty, pairwise disjoint slices."""

    parts: tuple[Stream, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("a partitioning needs at least the empty base level")
        if not self.parts[0].is_empty:
            raise ValueError("level 0 must be the empty stream")
        seen: set[Cell] = set()
        for index, part in enumerate(self.parts[1:], start=1):
            if part.is_empty:
                raise ValueError(f"level {index} must be nonempty")
            cells = set(part.cells())
            if cells & seen:
                raise ValueError(f"level {index} overlaps an earlier level")
            seen |= cells

    @classmethod
    def from_levels(cls, levels: tuple[Stream, ...] | list[Stream]) -> "Partitioning":
        return cls((Stream(), *levels))

    @property
    def level_count(self) -> int:
        return len(self.parts) - 1

    def union(self) -> Stream:
        whole = Stream()
        for part in self.parts:
            whole = whole | part
        return whole


@dataclass(frozen=True)
class LevelMappingReport:
    valid: bool
    total: bool
    first_violation: int | None = None
    offending: tuple[Cell, ...] = ()


def extract_level_mapping(
    program: Program,
    data: Stream,
    gamma: frozenset[str],
    t: int,
    stream: Stream,
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> Partitioning | None:
    """Levels from the fixed-point iteration's stage differences; None when the
    iteration stops short of the stream (no total level mapping exists then)."""
    if not is_t_model(program, stream, t, data, gamma):
        raise ValueError("level mappings are extracted from t-models only")
    trace = phi_dagger(program, data, gamma, t, stream, bound)
    if trace.fixpoint != stream:
        return None
    levels = []
    for previous, current in zip(trace.stages, trace.stages[1:]):
        difference = current - previous
        if not difference.is_empty:
            levels.append(difference)
    return Partitioning.from_levels(levels)


def verify_level_mapping(
    partitioning: Partitioning,
    program: Program,
    data: Stream,
    gamma: frozenset[str],
    t: int,
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> LevelMappingReport:
    """Check each level against what its predecessors justify.

    A level may only contain data cells and cells derived from rules whose
    bodies are already certain when everything up to the previous level is
    known and the whole stream bounds what may still come.
    """
    whole = partitioning.union()
    prefix = Stream()
    valid, first_violation, offending = True, None, ()
    for index, part in enumerate(partitioning.parts[1:], start=1):
        pair = ThreeValuedStream(prefix, whole)
        fired = [
            r.head for r in program if entails3(pair, t, r.body_formula(), gamma, bound)
        ]
        allowed = data | model_op(prefix, t, conjoin(fired), gamma)
        if data.is_substream(whole):
            compact = phi(program, data, gamma, t, pair, bound)
            assert allowed == compact, "level justification computed two ways disagrees"
        if not part.is_substream(allowed):
            valid = False
            first_violation = index
            offending = tuple((part - allowed).cells())
            break
        prefix = prefix | part
    total = valid and is_t_model(program, whole, t, data, gamma)
    return LevelMappingReport(valid, total, first_violation, offending)


def detect_circular(
    program: Program,
    stream: Stream,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    bound: int = DEFAULT_MINIMALITY_BOUND,
) -> bool:
    """True for answer streams whose support rests on self-justifying loops."""
    if not is_t_answer_stream(program, stream, t, data, gamma, bound):
        return False
    return not is_phi_answer_stream(program, stream, t, data, gamma)
