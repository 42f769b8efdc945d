"""Entailment over streams: hull-based, fixed-interval, and three-valued."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .formulas import (
    And,
    At,
    Atom,
    Box,
    Diamond,
    Formula,
    Implies,
    Neg,
    Or,
    Top,
    Window,
    atoms,
    classify,
    walk,
)
from .streams import (
    BoundExceeded,
    Interval,
    Stream,
    ThreeValuedStream,
    window_interval,
)

DEFAULT_COMPLETION_BOUND = 20


@dataclass(frozen=True)
class Context:
    """Shared evaluation inputs: the data part and the background atoms Γ."""

    data: Stream = field(default_factory=Stream)
    gamma: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gamma", frozenset(self.gamma))
        for atom in self.gamma:
            if not atom or not isinstance(atom, str):
                raise ValueError(f"background atoms must be nonempty strings, got {atom!r}")


def entails(stream: Stream, t: int, formula: Formula, gamma: frozenset[str] = frozenset()) -> bool:
    """Truth at t, with □/◇ ranging over every point of the stream's known interval.

    The known interval starts as the stream's support and each window narrows
    it; quantifiers visit gap points inside it (their atom sets are empty but
    they are part of what the stream asserts).
    """
    return _eval_hull(stream, stream.support(), t, formula, gamma)


def _eval_hull(stream: Stream, hull: Interval, t: int, formula: Formula, gamma: frozenset[str]) -> bool:
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Atom):
        if formula.name in gamma:
            return True
        return hull.contains(t) and formula.name in stream.at(t)
    if isinstance(formula, Neg):
        return not _eval_hull(stream, hull, t, formula.sub, gamma)
    if isinstance(formula, And):
        return _eval_hull(stream, hull, t, formula.left, gamma) and _eval_hull(
            stream, hull, t, formula.right, gamma
        )
    if isinstance(formula, Or):
        return _eval_hull(stream, hull, t, formula.left, gamma) or _eval_hull(
            stream, hull, t, formula.right, gamma
        )
    if isinstance(formula, Implies):
        return not _eval_hull(stream, hull, t, formula.left, gamma) or _eval_hull(
            stream, hull, t, formula.right, gamma
        )
    if isinstance(formula, Diamond):
        return any(_eval_hull(stream, hull, u, formula.sub, gamma) for u in hull.points())
    if isinstance(formula, Box):
        return all(_eval_hull(stream, hull, u, formula.sub, gamma) for u in hull.points())
    if isinstance(formula, At):
        return _eval_hull(stream, hull, formula.time, formula.sub, gamma)
    if isinstance(formula, Window):
        narrowed = hull.intersect(window_interval(t, formula.left, formula.right))
        return _eval_hull(stream, narrowed, t, formula.sub, gamma)
    raise TypeError(f"unknown formula node: {formula!r}")


def entails_fixed(
    stream: Stream,
    interval: Interval,
    t: int,
    formula: Formula,
    gamma: frozenset[str] = frozenset(),
) -> bool:
    """Truth at t with □/◇ and @ constrained to a fixed evaluation interval."""
    if not interval.contains(t):
        raise ValueError(f"evaluation point {t} lies outside the interval {interval}")
    if not interval.is_finite:
        raise ValueError("fixed-interval evaluation requires a finite interval")
    return _eval_fixed(stream, interval, t, formula, gamma)


def _eval_fixed(stream: Stream, interval: Interval, t: int, formula: Formula, gamma: frozenset[str]) -> bool:
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Atom):
        return formula.name in gamma or formula.name in stream.at(t)
    if isinstance(formula, Neg):
        return not _eval_fixed(stream, interval, t, formula.sub, gamma)
    if isinstance(formula, And):
        return _eval_fixed(stream, interval, t, formula.left, gamma) and _eval_fixed(
            stream, interval, t, formula.right, gamma
        )
    if isinstance(formula, Or):
        return _eval_fixed(stream, interval, t, formula.left, gamma) or _eval_fixed(
            stream, interval, t, formula.right, gamma
        )
    if isinstance(formula, Implies):
        return not _eval_fixed(stream, interval, t, formula.left, gamma) or _eval_fixed(
            stream, interval, t, formula.right, gamma
        )
    if isinstance(formula, Diamond):
        return any(_eval_fixed(stream, interval, u, formula.sub, gamma) for u in interval.points())
    if isinstance(formula, Box):
        return all(_eval_fixed(stream, interval, u, formula.sub, gamma) for u in interval.points())
    if isinstance(formula, At):
        return interval.contains(formula.time) and _eval_fixed(
            stream, interval, formula.time, formula.sub, gamma
        )
    if isinstance(formula, Window):
        windowed = stream.window(formula.left, formula.right, t)
        return _eval_fixed(windowed, interval, t, formula.sub, gamma)
    raise TypeError(f"unknown formula node: {formula!r}")


def _conjuncts(formula: Formula) -> list[Formula]:
    if isinstance(formula, And):
        return _conjuncts(formula.left) + _conjuncts(formula.right)
    return [formula]


def _is_simple_box(formula: Formula) -> bool:
    """And/At/Window combinations of monotone pieces and boxes over monotone bodies."""
    if isinstance(formula, (Atom, Top)):
        return True
    if isinstance(formula, And):
        return _is_simple_box(formula.left) and _is_simple_box(formula.right)
    if isinstance(formula, (At, Window)):
        return _is_simple_box(formula.sub)
    if isinstance(formula, Box):
        return classify(formula.sub).monotone
    return False


def entails3(
    pair: ThreeValuedStream,
    t: int,
    formula: Formula,
    gamma: frozenset[str] = frozenset(),
    bound: int = DEFAULT_COMPLETION_BOUND,
) -> bool:
    """True when every completion between the bounds entails the formula at t.

    Splits conjunctions and dispatches each literal to the cheapest exact
    check: monotone literals need only the lower bound, negated monotone
    literals only the upper; box- and diamond-free literals are decided by the
    cells of undefined atoms they mention; box-over-monotone shapes by pairs of
    undefined cells (a failing completion always shrinks to one adding at most
    two cells — the cells pinning the failure point into the known interval);
    anything else enumerates completions, gated by the bound.
    """
    lower, upper = pair.lower, pair.upper
    for literal in _conjuncts(formula):
        kind = classify(literal)
        if kind.monotone:
            if not entails(lower, t, literal, gamma):
                return False
        elif isinstance(literal, Neg) and classify(literal.sub).monotone:
            if entails(upper, t, literal.sub, gamma):
                return False
        else:
            undefined = list((upper - lower).cells())
            if kind.box_free and not any(isinstance(n, Diamond) for n in walk(literal)):
                mentioned = atoms(literal)
                undefined = [c for c in undefined if c[1] in mentioned]
                if not _holds_in_all_completions(lower, undefined, t, literal, gamma, bound):
                    return False
            elif _is_simple_box(literal):
                if not _holds_with_cell_pairs(lower, undefined, t, literal, gamma):
                    return False
            else:
                if not _holds_in_all_completions(lower, undefined, t, literal, gamma, bound):
                    return False
    return True


def _holds_in_all_completions(
    lower: Stream,
    cells: list[tuple[int, str]],
    t: int,
    formula: Formula,
    gamma: frozenset[str],
    bound: int,
) -> bool:
    if len(cells) > bound:
        raise BoundExceeded("completion check over undefined cells", len(cells), bound)
    for k in range(len(cells) + 1):
        for combo in combinations(cells, k):
            candidate = lower | Stream.from_cells(combo)
            if not entails(candidate, t, formula, gamma):
                return False
    return True


def _holds_with_cell_pairs(
    lower: Stream,
    cells: list[tuple[int, str]],
    t: int,
    formula: Formula,
    gamma: frozenset[str],
) -> bool:
    if not entails(lower, t, formula, gamma):
        return False
    for k in (1, 2):
        for combo in combinations(cells, k):
            if not entails(lower | Stream.from_cells(combo), t, formula, gamma):
                return False
    return True
