"""Seeded random generators shared by the property suites.

Every generator takes a `random.Random` instance so suites stay reproducible
from a single pinned seed. Generators that must satisfy a precondition
(t-consistent heads, convergent closure models) rejection-sample until they
produce a conforming value, so every emitted case counts as a valid trial.
"""

import random

from streamfix import (
    INF,
    TOP,
    And,
    At,
    Atom,
    Box,
    Diamond,
    Implies,
    Neg,
    Or,
    Program,
    Rule,
    Stream,
    Top,
    Window,
    check_t_consistent,
    tp,
)

DEFAULT_ATOMS = ("a", "b", "c")

ALL_OPS = ("and", "or", "implies", "neg", "diamond", "box", "at", "window")
NORMAL_OPS = ("and", "box", "at", "window")
MONOTONE_OPS = ("and", "or", "diamond", "at", "window")
BOX_FREE_NORMAL_OPS = ("and", "at", "window")


def stream(rng: random.Random, atoms=DEFAULT_ATOMS, lo=1, hi=8, density=0.35) -> Stream:
    entries = {}
    for u in range(lo, hi + 1):
        chosen = {a for a in atoms if rng.random() < density}
        if chosen:
            entries[u] = chosen
    return Stream(entries)


def substream(rng: random.Random, base: Stream, keep=0.6) -> Stream:
    return Stream.from_cells(c for c in base.cells() if rng.random() < keep)


def superstream(rng: random.Random, base: Stream, atoms=DEFAULT_ATOMS, lo=1, hi=8, add=0.2) -> Stream:
    return base | stream(rng, atoms, lo, hi, add)


def gamma_set(rng: random.Random) -> frozenset[str]:
    return frozenset({"d"}) if rng.random() < 0.4 else frozenset()


def window_bounds(rng: random.Random) -> tuple[int | float, int | float]:
    left = rng.choice((0, 1, 2, 3, INF))
    right = rng.choice((0, 1, 2, INF))
    if left != INF and right != INF and left > right:
        left, right = right, left
    return left, right


def formula(rng: random.Random, depth=3, atoms=DEFAULT_ATOMS, ops=ALL_OPS, max_at=9):
    if depth <= 0 or rng.random() < 0.25:
        return TOP if rng.random() < 0.1 else Atom(rng.choice(atoms))
    op = rng.choice(ops)
    sub = lambda: formula(rng, depth - 1, atoms, ops, max_at)  # noqa: E731
    if op == "and":
        return And(sub(), sub())
    if op == "or":
        return Or(sub(), sub())
    if op == "implies":
        return Implies(sub(), sub())
    if op == "neg":
        return Neg(sub())
    if op == "diamond":
        return Diamond(sub())
    if op == "box":
        return Box(sub())
    if op == "at":
        return At(rng.randint(1, max_at), sub())
    left, right = window_bounds(rng)
    return Window(left, right, sub())


def t_formula(rng: random.Random, t: int, gamma=frozenset(), depth=3, atoms=DEFAULT_ATOMS, ops=NORMAL_OPS):
    """A t-consistent formula over the given operator set (rejection-sampled)."""
    for _ in range(200):
        candidate = formula(rng, depth, atoms, ops)
        if not isinstance(candidate, Top) and check_t_consistent(candidate, t, gamma):
            return candidate
    return Atom(rng.choice(atoms))


def rule(rng: random.Random, t: int, gamma=frozenset(), atoms=DEFAULT_ATOMS, body_depth=2, head_ops=NORMAL_OPS, body_ops=ALL_OPS) -> Rule:
    head = t_formula(rng, t, gamma, depth=2, atoms=atoms, ops=head_ops)
    pos = tuple(formula(rng, body_depth, atoms, body_ops) for _ in range(rng.randint(1, 2)))
    neg = tuple(formula(rng, body_depth, atoms, body_ops) for _ in range(rng.randint(0, 1)))
    return Rule(head, pos, neg)


def program(rng: random.Random, t: int, gamma=frozenset(), atoms=DEFAULT_ATOMS, max_rules=3, body_depth=2, head_ops=NORMAL_OPS, body_ops=ALL_OPS) -> Program:
    return Program(
        rule(rng, t, gamma, atoms, body_depth, head_ops, body_ops)
        for _ in range(rng.randint(1, max_rules))
    )


def translation_head(rng: random.Random, atoms=("a", "b"), depth=2):
    """Head shapes evaluated identically by the fixed-interval semantics and
    by the windowed translation: atoms, conjunction, windows over those."""
    if depth <= 0 or rng.random() < 0.5:
        return Atom(rng.choice(atoms))
    if rng.random() < 0.5:
        return And(translation_head(rng, atoms, depth - 1), translation_head(rng, atoms, depth - 1))
    return Window(rng.randint(0, 2), rng.randint(0, 2), translation_head(rng, atoms, depth - 1))


def _positive_piece(rng: random.Random, atoms, depth):
    """Window-free, negation-free subformula; safe under inner windows."""
    if depth <= 0 or rng.random() < 0.4:
        x = rng.random()
        if x < 0.7:
            return Atom(rng.choice(atoms))
        if x < 0.85:
            return TOP
        return At(rng.randint(1, 7), Atom(rng.choice(atoms)))
    op = rng.choice(("and", "or", "diamond"))
    if op == "and":
        return And(_positive_piece(rng, atoms, depth - 1), _positive_piece(rng, atoms, depth - 1))
    if op == "or":
        return Or(_positive_piece(rng, atoms, depth - 1), _positive_piece(rng, atoms, depth - 1))
    return Diamond(_positive_piece(rng, atoms, depth - 1))


def translation_body(rng: random.Random, t: int, atoms=("a", "b"), depth=2):
    """Body literals inside the fixed-vs-windowed equivalence class: box-free,
    @ only over atoms, inner windows only over positive window-free pieces."""
    if depth <= 0 or rng.random() < 0.3:
        x = rng.random()
        if x < 0.6:
            return Atom(rng.choice(atoms))
        if x < 0.8:
            return At(rng.randint(max(1, t - 2), t + 2), Atom(rng.choice(atoms)))
        return TOP
    op = rng.choice(("and", "or", "neg", "implies", "diamond", "window"))
    if op == "window":
        return Window(rng.randint(0, 2), rng.randint(0, 2), _positive_piece(rng, atoms, depth - 1))
    sub = lambda: translation_body(rng, t, atoms, depth - 1)  # noqa: E731
    if op == "and":
        return And(sub(), sub())
    if op == "or":
        return Or(sub(), sub())
    if op == "implies":
        return Implies(sub(), sub())
    if op == "neg":
        return Neg(sub())
    return Diamond(sub())


def translation_rule(rng: random.Random, t: int, atoms=("a", "b")) -> Rule:
    head = translation_head(rng, atoms)
    pos = tuple(translation_body(rng, t, atoms) for _ in range(rng.randint(1, 2)))
    neg = tuple(translation_body(rng, t, atoms) for _ in range(rng.randint(0, 1)))
    return Rule(head, pos, neg)


def ordinary_program(rng: random.Random, atoms=DEFAULT_ATOMS, max_rules=4) -> Program:
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        head = Atom(rng.choice(atoms))
        pos = tuple(Atom(rng.choice(atoms)) for _ in range(rng.randint(0, 2))) or (TOP,)
        neg = tuple(Atom(rng.choice(atoms)) for _ in range(rng.randint(0, 2)))
        rules.append(Rule(head, pos, neg))
    return Program(rules)


def closure_model(prog: Program, data: Stream, gamma: frozenset[str], t: int, max_cells=12) -> Stream | None:
    """Inflate the data by repeated consequence steps until the result closes
    under them; the closure is then a model of the program. None when the
    iteration refuses to settle within the cell cap."""
    current = data
    for _ in range(40):
        step = tp(prog, data, gamma, t, current)
        if step.is_substream(current):
            return current
        current = current | step
        if current.cell_count > max_cells:
            return None
    return None


def model_scenario(rng: random.Random, t: int, gamma=frozenset(), atoms=("a", "b"), max_rules=2, max_cells=12):
    """A program, data part, and a closure model of both (rejection-sampled)."""
    while True:
        prog = program(rng, t, gamma, atoms=atoms, max_rules=max_rules, body_depth=2)
        data = stream(rng, atoms=atoms, lo=max(1, t - 2), hi=t + 2, density=0.2)
        model = closure_model(prog, data, gamma, t, max_cells)
        if model is not None:
            return prog, data, model
