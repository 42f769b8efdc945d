"""Formula and rule ASTs: construction, classification, printing, consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .streams import INF, Interval, window_interval

Extended = int | float  # window bounds: naturals extended with math.inf


class Formula:
    """Base class for formula AST nodes; all nodes are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")


@dataclass(frozen=True)
class Top(Formula):
    pass


TOP = Top()


@dataclass(frozen=True)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    sub: Formula


@dataclass(frozen=True)
class Box(Formula):
    sub: Formula


@dataclass(frozen=True)
class At(Formula):
    time: int
    sub: Formula

    def __post_init__(self):
        if not isinstance(self.time, int) or self.time < 1:
            raise ValueError(f"@ time point must be an integer >= 1, got {self.time!r}")


@dataclass(frozen=True)
class Window(Formula):
    left: Extended
    right: Extended
    sub: Formula

    def __post_init__(self):
        for bound in (self.left, self.right):
            ok = bound == INF or (isinstance(bound, int) and not isinstance(bound, bool) and bound >= 0)
            if not ok:
                raise ValueError(f"window bounds must be naturals or inf, got {bound!r}")


def walk(formula: Formula) -> Iterator[Formula]:
    """Yield every node of the formula, preorder."""
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, Or, Implies)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Neg, Diamond, Box, At, Window)):
            stack.append(node.sub)


def atoms(formula: Formula) -> frozenset[str]:
    return frozenset(node.name for node in walk(formula) if isinstance(node, Atom))


class Classification(NamedTuple):
    box_free: bool
    monotone: bool
    normal: bool


def classify(formula: Formula) -> Classification:
    """box_free: no Box; monotone: no Neg/Implies/Box; normal: no Neg/Or/Implies/Diamond."""
    box_free = monotone = normal = True
    for node in walk(formula):
        if isinstance(node, Box):
            box_free = monotone = False
        elif isinstance(node, Neg):
            monotone = normal = False
        elif isinstance(node, Implies):
            monotone = normal = False
        elif isinstance(node, Or):
            normal = False
        elif isinstance(node, Diamond):
            normal = False
    return Classification(box_free, monotone, normal)


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-fold conjunction; empty gives ⊤, a single formula stays unwrapped."""
    result: Formula | None = None
    for part in parts:
        result = part if result is None else And(result, part)
    return TOP if result is None else result


def check_t_consistent(
    formula: Formula, t: int, gamma: frozenset[str] = frozenset()
) -> bool:
    """Certify that a normal formula has a model at evaluation point t.

    Sound and conservative: every accepted formula is satisfiable at t (the
    stream of its own derived cells is a witness). Formulas that jump with @
    underneath a box are rejected outright — quantified points may then demand
    cells outside any common support, which is exactly the pattern that breaks
    satisfiability-by-derivation. Atoms must sit inside the window accessible
    from t (Γ-atoms and truth are exempt); boxes themselves add no constraint
    beyond the @-rejection, since a quantified point always lies inside every
    window nested under it.
    """
    if not classify(formula).normal:
        raise ValueError("t-consistency is defined for normal formulas only")

    def rec(node: Formula, at: int, window: Interval) -> bool:
        if isinstance(node, Top):
            return True
        if isinstance(node, Atom):
            return node.name in gamma or window.contains(at)
        if isinstance(node, And):
            return rec(node.left, at, window) and rec(node.right, at, window)
        if isinstance(node, At):
            return rec(node.sub, node.time, window)
        if isinstance(node, Window):
            return rec(node.sub, at, window.intersect(window_interval(at, node.left, node.right)))
        if isinstance(node, Box):
            return not any(isinstance(inner, At) for inner in walk(node.sub))
        raise TypeError(f"unexpected node in normal formula: {node!r}")

    return rec(formula, t, Interval(1, INF))


@dataclass(frozen=True)
class Rule:
    """head :- pos..., not neg... — the head must be normal and not plain truth."""

    head: Formula
    pos: tuple[Formula, ...] = ()
    neg: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "neg", tuple(self.neg))
        if isinstance(self.head, Top):
            raise ValueError("rule head must not be plain truth")
        if not classify(self.head).normal:
            raise ValueError("rule head must be a normal formula (no negation, |, ->, or diamond)")
        if not self.pos and not self.neg:
            raise ValueError("rule body must be nonempty; use Rule.fact for facts")

    @classmethod
    def fact(cls, head: Formula) -> "Rule":
        return cls(head, (TOP,), ())

    @property
    def is_fact(self) -> bool:
        return self.pos == (TOP,) and not self.neg

    def body_formula(self) -> Formula:
        """B(ρ): the positive literals and negated negative literals, conjoined in order."""
        parts: list[Formula] = list(self.pos)
        parts.extend(Neg(b) for b in self.neg)
        return conjoin(parts)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.rules:
            raise ValueError("program must be nonempty")

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def head_atoms(program: Program) -> frozenset[str]:
    out: set[str] = set()
    for rule in program:
        out |= atoms(rule.head)
    return frozenset(out)


def at_targets(program: Program) -> frozenset[int]:
    """Every absolute time point named by an @ anywhere in the program."""
    out: set[int] = set()
    for rule in program:
        for formula in (rule.head, *rule.pos, *rule.neg):
            out.update(n.time for n in walk(formula) if isinstance(n, At))
    return frozenset(out)


def max_finite_window_bound(program: Program) -> int:
    """Largest finite window bound in the program; 0 if none."""
    best = 0
    for rule in program:
        for formula in (rule.head, *rule.pos, *rule.neg):
            for node in walk(formula):
                if isinstance(node, Window):
                    for bound in (node.left, node.right):
                        if bound != INF:
                            best = max(best, int(bound))
    return best


def is_ordinary(program: Program) -> bool:
    """True when every head is an atom and every body literal is an atom or truth."""
    for rule in program:
        if not isinstance(rule.head, Atom):
            return False
        for literal in (*rule.pos, *rule.neg):
            if not isinstance(literal, (Atom, Top)):
                return False
    return True


_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_PREFIX = 1, 2, 3, 4


def _fmt(formula: Formula, parent_prec: int) -> str:
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Implies):
        text = f"{_fmt(formula.left, _PREC_IMPLIES + 1)} -> {_fmt(formula.right, _PREC_IMPLIES)}"
        prec = _PREC_IMPLIES
    elif isinstance(formula, Or):
        text = f"{_fmt(formula.left, _PREC_OR)} | {_fmt(formula.right, _PREC_OR + 1)}"
        prec = _PREC_OR
    elif isinstance(formula, And):
        text = f"{_fmt(formula.left, _PREC_AND)} & {_fmt(formula.right, _PREC_AND + 1)}"
        prec = _PREC_AND
    else:
        sub = _fmt(formula.sub, _PREC_PREFIX)
        if isinstance(formula, Neg):
            text = f"not {sub}"
        elif isinstance(formula, Diamond):
            text = f"diamond {sub}"
        elif isinstance(formula, Box):
            text = f"box {sub}"
        elif isinstance(formula, At):
            text = f"@{formula.time} {sub}"
        else:
            left = "inf" if formula.left == INF else str(formula.left)
            right = "inf" if formula.right == INF else str(formula.right)
            text = f"[{left},{right}] {sub}"
        prec = _PREC_PREFIX
    return f"({text})" if prec < parent_prec else text


def format_formula(formula: Formula) -> str:
    """Render a formula in the surface syntax with minimal parentheses."""
    return _fmt(formula, 0)


def format_rule(rule: Rule) -> str:
    if rule.is_fact:
        return f"{format_formula(rule.head)}."
    literals = [_fmt_positive_literal(b) for b in rule.pos]
    literals.extend(f"not {_fmt(b, _PREC_PREFIX)}" for b in rule.neg)
    return f"{format_formula(rule.head)} :- {', '.join(literals)}."


def _fmt_positive_literal(formula: Formula) -> str:
    """A positive body literal must not start with `not`, or it would read
    back as a negated literal."""
    text = format_formula(formula)
    return f"({text})" if text.startswith("not ") else text


def format_program(program: Program) -> str:
    return "\n".join(format_rule(rule) for rule in program) + "\n"
