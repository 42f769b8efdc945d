"""Answer-stream checks and enumeration under three semantics, plus program translations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .entailment import DEFAULT_COMPLETION_BOUND, entails, entails_fixed
from .formulas import (
    At,
    Atom,
    Formula,
    Program,
    Rule,
    Top,
    Window,
    atoms,
    at_targets,
    check_t_consistent,
    conjoin,
    format_formula,
    head_atoms,
    is_ordinary,
    max_finite_window_bound,
)
from .operators import model_op, phi_dagger, tp, tp_rules
from .streams import (
    EMPTY_INTERVAL,
    BoundExceeded,
    Cell,
    Interval,
    Stream,
)

DEFAULT_ENUMERATION_BOUND = 24
MAX_UNIVERSE_CELLS = 64
MAX_SWEEP_CANDIDATES = 65536

MODES = ("flp", "fixpoint", "fixed-interval")


def validate_heads(program: Program, t: int, gamma: frozenset[str] = frozenset()) -> None:
    """Raise unless every rule head is consistent at the evaluation point."""
    for index, rule in enumerate(program, start=1):
        if not check_t_consistent(rule.head, t, gamma):
            raise ValueError(
                f"head of rule {index} ({format_formula(rule.head)}) is not consistent at t={t}"
            )


def reduct(program: Program, stream: Stream, t: int, gamma: frozenset[str] = frozenset()) -> tuple[Rule, ...]:
    """The rules whose bodies the stream entails at t; possibly empty."""
    return tuple(r for r in program if entails(stream, t, r.body_formula(), gamma))


def _models_rules(
    rules: Sequence[Rule], stream: Stream, t: int, gamma: frozenset[str]
) -> bool:
    return all(
        not entails(stream, t, r.body_formula(), gamma) or entails(stream, t, r.head, gamma)
        for r in rules
    )


def is_t_model(
    program: Program,
    stream: Stream,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
) -> bool:
    """True when the stream contains the data and satisfies every rule at t."""
    validate_heads(program, t, gamma)
    if not data.is_substream(stream):
        return False
    direct = _models_rules(program.rules, stream, t, gamma)
    via_step = tp(program, data, gamma, t, stream).is_substream(stream)
    assert direct == via_step, "rule-wise and consequence-step model checks disagree"
    return direct


def _bits(mask: int, n: int) -> list[int]:
    return [j for j in range(n) if mask >> j & 1]


def _proper_submodel_exists(
    rules: Sequence[Rule],
    stream: Stream,
    t: int,
    data: Stream,
    gamma: frozenset[str],
    bound: int,
) -> bool:
    """Whether any proper substream containing the data still satisfies the rules.

    Candidates are visited grouped by their support interval: the left endpoint
    is the data's unless a strictly earlier free cell is chosen, and dually on
    the right, so each group fixes both endpoints with pin bits and shares one
    memoized scan.
    """
    free = sorted((stream - data).cells())
    if len(free) > bound:
        raise BoundExceeded("minimality scan over cells", len(free), bound)
    if not free:
        return False
    times = sorted({u for u, _ in free})
    support = data.support()
    if data.is_empty:
        if _models_rules(rules, data, t, gamma):
            return True  # the empty candidate
        lo_choices, hi_choices = times, times
    else:
        lo_choices = [support.lo] + [u for u in reversed(times) if u < support.lo]
        hi_choices = [int(support.hi)] + [u for u in times if u > support.hi]

    for lo in lo_choices:
        for hi in hi_choices:
            if lo > hi:
                continue
            eligible = [cell for cell in free if lo <= cell[0] <= hi]
            pins = []
            if data.is_empty or lo < support.lo:
                pins.append(sum(1 << j for j, cell in enumerate(eligible) if cell[0] == lo))
            if data.is_empty or hi > support.hi:
                pins.append(sum(1 << j for j, cell in enumerate(eligible) if cell[0] == hi))
            skip = (1 << len(eligible)) - 1 if len(eligible) == len(free) else -1
            if _scan_support_group(rules, t, data, gamma, eligible, pins, skip):
                return True
    return False


def _scan_support_group(
    rules: Sequence[Rule],
    t: int,
    data: Stream,
    gamma: frozenset[str],
    free: list[Cell],
    pins: list[int],
    skip_mask: int,
) -> bool:
    """Minimality scan over the candidates sharing one support interval.

    With the support fixed, a body's truth depends only on which of its own
    atoms' cells are present, and the derived head cells depend only on which
    rules fired — both are memoized, leaving bit arithmetic per candidate.
    """
    n = len(free)
    index = {cell: j for j, cell in enumerate(free)}
    relevant = []
    for rule in rules:
        names = atoms(rule.body_formula())
        relevant.append(sum(1 << j for j, cell in enumerate(free) if cell[1] in names))
    body_memo: list[dict[int, bool]] = [{} for _ in rules]
    required_memo: dict[int, int | None] = {}
    data_cells = frozenset(data.cells())

    for mask in range(1 << n):
        if mask == skip_mask or any(not mask & pin for pin in pins):
            continue
        candidate: Stream | None = None
        fired_mask = 0
        for i, rule in enumerate(rules):
            key = mask & relevant[i]
            value = body_memo[i].get(key)
            if value is None:
                if candidate is None:
                    candidate = data | Stream.from_cells(free[j] for j in _bits(mask, n))
                value = entails(candidate, t, rule.body_formula(), gamma)
                body_memo[i][key] = value
            if value:
                fired_mask |= 1 << i
        required = required_memo.get(fired_mask, -1)
        if required == -1:
            if candidate is None:
                candidate = data | Stream.from_cells(free[j] for j in _bits(mask, n))
            heads = conjoin(rules[i].head for i in _bits(fired_mask, len(rules)))
            demanded = set(model_op(candidate, t, heads, gamma).cells()) - data_cells
            if all(cell in index for cell in demanded):
                required = sum(1 << index[cell] for cell in demanded)
            else:
                required = None  # demands cells no candidate can contain
            required_memo[fired_mask] = required
        if required is not None and required & ~mask == 0:
            return True
    return False


def is_t_answer_stream(
    program: Program,
    stream: Stream,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> bool:
    """t-model of the program, minimal among models of its own fired rules."""
    if not is_t_model(program, stream, t, data, gamma):
        return False
    fired = reduct(program, stream, t, gamma)
    return not _proper_submodel_exists(fired, stream, t, data, gamma, bound)


def is_phi_answer_stream(
    program: Program,
    stream: Stream,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> bool:
    """t-model reconstructed exactly by its bounded fixed-point iteration."""
    if not is_t_model(program, stream, t, data, gamma):
        return False
    return phi_dagger(program, data, gamma, t, stream, bound).fixpoint == stream


def _models_rules_fixed(
    rules: Sequence[Rule], stream: Stream, interval: Interval, t: int, gamma: frozenset[str]
) -> bool:
    return all(
        not entails_fixed(stream, interval, t, r.body_formula(), gamma)
        or entails_fixed(stream, interval, t, r.head, gamma)
        for r in rules
    )


def is_fixed_interval_answer_stream(
    program: Program,
    stream: Stream,
    interval: Interval,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> bool:
    """Answer stream under the fixed-interval semantics: quantifiers range over the interval."""
    if not data.is_substream(stream):
        return False
    if not _models_rules_fixed(program.rules, stream, interval, t, gamma):
        return False
    fired = tuple(
        r for r in program if entails_fixed(stream, interval, t, r.body_formula(), gamma)
    )
    free = sorted((stream - data).cells())
    if len(free) > bound:
        raise BoundExceeded("minimality scan over cells", len(free), bound)
    for k in range(len(free)):
        for combo in combinations(free, k):
            candidate = data | Stream.from_cells(combo)
            if _models_rules_fixed(fired, candidate, interval, t, gamma):
                return False
    return True


@dataclass(frozen=True)
class Universe:
    """Finite candidate space for enumeration: atom names crossed with a horizon."""

    atoms: frozenset[str]
    horizon: Interval

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        if self.horizon.is_empty or not self.horizon.is_finite or self.horizon.lo < 1:
            raise ValueError("universe horizon must be a nonempty finite interval from 1 up")

    @property
    def cell_count(self) -> int:
        return len(self.atoms) * int(self.horizon.width())

    def cells(self) -> frozenset[Cell]:
        return frozenset((u, a) for u in self.horizon.points() for a in sorted(self.atoms))


def default_universe(
    program: Program,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    interval: Interval | None = None,
    max_cells: int = MAX_UNIVERSE_CELLS,
) -> Universe:
    """Head and data atoms, over the data/@-target span padded by the largest window bound."""
    atom_names = (head_atoms(program) - gamma) | {a for _, a in data.cells()}
    base = data.support().hull(Interval(t, t))
    for target in at_targets(program):
        base = base.hull(Interval(target, target))
    if interval is not None and not interval.is_empty:
        if not interval.is_finite:
            raise ValueError("enumeration requires a finite interval")
        base = base.hull(interval)
    pad = max_finite_window_bound(program)
    horizon = Interval(max(1, base.lo - pad), int(base.hi) + pad)
    universe = Universe(frozenset(atom_names), horizon)
    if universe.cell_count > max_cells:
        raise BoundExceeded("universe cells", universe.cell_count, max_cells)
    return universe


def _fixed_point_candidates(
    program: Program, t: int, data: Stream, gamma: frozenset[str], universe: Universe
) -> list[Stream]:
    """Every stream of the form data ∪ derived(support, fired rules) that the step maps to itself.

    Complete for both answer-stream semantics: any answer stream is a fixed
    point of the consequence step, and the derived cells depend on the
    interpretation only through its support interval.
    """
    rules = program.rules
    support = data.support()
    horizon = universe.horizon
    if data.is_empty:
        intervals = [EMPTY_INTERVAL] + [
            Interval(lo, hi)
            for lo in horizon.points()
            for hi in range(lo, int(horizon.hi) + 1)
        ]
    else:
        intervals = [
            Interval(lo, hi)
            for lo in range(horizon.lo, support.lo + 1)
            for hi in range(int(support.hi), int(horizon.hi) + 1)
        ]
    total = len(intervals) * (1 << len(rules))
    if total > MAX_SWEEP_CANDIDATES:
        raise BoundExceeded("fixed-point sweep", total, MAX_SWEEP_CANDIDATES)

    universe_cells = universe.cells()
    seen: set[Stream] = set()
    out: list[Stream] = []
    for span in intervals:
        if span.is_empty:
            witness = Stream()
        else:
            edges = Stream({span.lo: {"_edge"}, int(span.hi): {"_edge"}})
            witness = data | edges
        for fired_mask in range(1 << len(rules)):
            heads = conjoin(rules[i].head for i in _bits(fired_mask, len(rules)))
            candidate = data | model_op(witness, t, heads, gamma)
            if candidate in seen:
                continue
            seen.add(candidate)
            if not all(cell in universe_cells for cell in candidate.cells()):
                continue
            if tp(program, data, gamma, t, candidate) == candidate:
                out.append(candidate)
    return out


def enumerate_answer_streams(
    program: Program,
    t: int,
    data: Stream = Stream(),
    gamma: frozenset[str] = frozenset(),
    universe: Universe | None = None,
    mode: str = "flp",
    interval: Interval | None = None,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> list[Stream]:
    """All answer streams within the universe, smallest first then lexicographic."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if mode == "fixed-interval":
        if interval is None:
            raise ValueError("fixed-interval mode requires an interval")
        if not interval.contains(t):
            raise ValueError(f"evaluation point {t} lies outside the interval {interval}")
    if universe is None:
        universe = default_universe(
            program, t, data, gamma, interval if mode == "fixed-interval" else None
        )
    if universe.cell_count > MAX_UNIVERSE_CELLS:
        raise BoundExceeded("universe cells", universe.cell_count, MAX_UNIVERSE_CELLS)
    universe_cells = universe.cells()
    data_cells = set(data.cells())
    if not data_cells <= universe_cells:
        raise ValueError("the data part must lie inside the universe")

    if mode == "fixed-interval":
        free = sorted(universe_cells - data_cells)
        if len(free) > bound:
            raise BoundExceeded("enumeration over universe cells", len(free), bound)
        found = []
        for k in range(len(free) + 1):
            for combo in combinations(free, k):
                candidate = data | Stream.from_cells(combo)
                if is_fixed_interval_answer_stream(
                    program, candidate, interval, t, data, gamma, bound
                ):
                    found.append(candidate)
        return sorted(found, key=lambda s: s.order_key)

    validate_heads(program, t, gamma)
    candidates = _fixed_point_candidates(program, t, data, gamma, universe)
    if mode == "flp":
        kept = [c for c in candidates if is_t_answer_stream(program, c, t, data, gamma, bound)]
    else:
        kept = [c for c in candidates if is_phi_answer_stream(program, c, t, data, gamma)]
    return sorted(kept, key=lambda s: s.order_key)


def marker_stream(interval: Interval, marker: str = "#") -> Stream:
    """The marker atom at every point of the interval."""
    return Stream({u: {marker} for u in interval.points()})


def boxplus_translate(
    program: Program, interval: Interval, t: int, marker: str = "#"
) -> tuple[Program, str]:
    """Rewrite fixed-interval evaluation into window form: wrap every head and
    body literal in the window reaching exactly across the interval from t, and
    add marker facts pinning each of its points."""
    if interval.is_empty or not interval.is_finite:
        raise ValueError("translation requires a nonempty finite interval")
    if not interval.contains(t):
        raise ValueError(f"evaluation point {t} lies outside the interval {interval}")
    for rule in program:
        for formula in (rule.head, *rule.pos, *rule.neg):
            if marker in atoms(formula):
                raise ValueError(f"marker atom {marker!r} collides with a program atom")
    left = t - interval.lo
    right = int(interval.hi) - t

    def wrap(formula: Formula) -> Formula:
        return Window(left, right, formula)

    rewritten = [
        Rule(wrap(r.head), tuple(wrap(b) for b in r.pos), tuple(wrap(b) for b in r.neg))
        for r in program
    ]
    facts = [Rule.fact(At(u, Atom(marker))) for u in interval.points()]
    return Program(tuple(rewritten + facts)), marker


def ordinary_answer_sets(program: Program, bound: int = 16) -> list[frozenset[str]]:
    """Stable models of a time-free program, by reduct over every candidate set."""
    if not is_ordinary(program):
        raise ValueError("answer sets are defined for ordinary programs only")
    sigma = sorted({name for r in program for f in (r.head, *r.pos, *r.neg) for name in atoms(f)})
    if len(sigma) > bound:
        raise BoundExceeded("answer-set enumeration over atoms", len(sigma), bound)
    results: list[frozenset[str]] = []
    for k in range(len(sigma) + 1):
        for combo in combinations(sigma, k):
            candidate = frozenset(combo)
            kept = [
                r for r in program
                if not any(isinstance(b, Atom) and b.name in candidate for b in r.neg)
            ]
            derived: set[str] = set()
            changed = True
            while changed:
                changed = False
                for r in kept:
                    if r.head.name in derived:
                        continue
                    if all(isinstance(b, Top) or b.name in derived for b in r.pos):
                        derived.add(r.head.name)
                        changed = True
            if derived == candidate:
                results.append(candidate)
    return results
