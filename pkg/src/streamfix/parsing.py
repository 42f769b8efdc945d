"""Tokenizer and recursive-descent parser for the rule and formula surface syntax."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formulas import (
    INF,
    And,
    At,
    Atom,
    Box,
    Diamond,
    Formula,
    Implies,
    Neg,
    Or,
    Program,
    Rule,
    TOP,
    Window,
)

KEYWORDS = frozenset({"box", "diamond", "not", "true", "inf"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>%[^\n]*)
  | (?P<newline>\n)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<arrow>->)
  | (?P<implied>:-)
  | (?P<sym>[#@\[\],()&|!.])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Syntax or structural error, with position and the tokens that were acceptable."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        detail = f"{message} at line {line}, column {col}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'int', 'keyword', a literal symbol, or 'end'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        value = match.group()
        col = pos - line_start + 1
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "ident":
            token_kind = "keyword" if value in KEYWORDS else "ident"
            tokens.append(Token(token_kind, value, line, col))
        elif kind == "int":
            tokens.append(Token("int", value, line, col))
        elif kind == "arrow":
            tokens.append(Token("->", value, line, col))
        elif kind == "implied":
            tokens.append(Token(":-", value, line, col))
        elif kind == "sym":
            tokens.append(Token(value, value, line, col))
        pos = match.end()
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


_PREFIX_STARTERS = ("not", "!", "box", "diamond", "@", "[")
_FORMULA_STARTERS = ("an atom", "'true'", "'#'", "'('") + tuple(f"'{s}'" for s in _PREFIX_STARTERS)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def check(self, kind: str, text: str | None = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def expect(self, kind: str, describe: str) -> Token:
        if not self.check(kind):
            self.fail(describe)
        return self.advance()

    def fail(self, *expected: str) -> None:
        token = self.current
        shown = f"'{token.text}'" if token.text else "end of input"
        raise ParseError(f"unexpected {shown}", token.line, token.col, expected)

    # formula := implies ; implies := or ('->' implies)? ; or := and ('|' and)*
    def parse_formula(self) -> Formula:
        left = self.parse_or()
        if self.check("->"):
            self.advance()
            return Implies(left, self.parse_formula())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.check("|"):
            self.advance()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.check("&"):
            self.advance()
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        token = self.current
        if self.check("keyword", "not") or self.check("!"):
            self.advance()
            return Neg(self.parse_unary())
        if self.check("keyword", "box"):
            self.advance()
            return Box(self.parse_unary())
        if self.check("keyword", "diamond"):
            self.advance()
            return Diamond(self.parse_unary())
        if self.check("@"):
            self.advance()
            time_token = self.expect("int", "a time point")
            time = int(time_token.text)
            if time < 1:
                raise ParseError("@ time point must be >= 1", time_token.line, time_token.col)
            return At(time, self.parse_unary())
        if self.check("["):
            self.advance()
            left = self.parse_window_bound()
            self.expect(",", "','")
            right = self.parse_window_bound()
            self.expect("]", "']'")
            return Window(left, right, self.parse_unary())
        return self.parse_primary()

    def parse_window_bound(self) -> int | float:
        if self.check("keyword", "inf"):
            self.advance()
            return INF
        if self.check("int"):
            return int(self.advance().text)
        self.fail("a natural number", "'inf'")
        raise AssertionError("unreachable")

    def parse_primary(self) -> Formula:
        if self.check("keyword", "true"):
            self.advance()
            return TOP
        if self.check("ident"):
            return Atom(self.advance().text)
        if self.check("#"):
            self.advance()
            return Atom("#")
        if self.check("("):
            self.advance()
            inner = self.parse_formula()
            self.expect(")", "')'")
            return inner
        self.fail(*_FORMULA_STARTERS)
        raise AssertionError("unreachable")

    # rule := formula (':-' literal (',' literal)*)? '.'
    def parse_rule(self) -> Rule:
        head_token = self.current
        head = self.parse_formula()
        pos: list[Formula] = []
        neg: list[Formula] = []
        if self.check(":-"):
            self.advance()
            while True:
                if self.check("keyword", "not"):
                    self.advance()
                    neg.append(self.parse_formula())
                else:
                    pos.append(self.parse_formula())
                if not self.check(","):
                    break
                self.advance()
        self.expect(".", "'.'")
        try:
            if not pos and not neg:
                return Rule.fact(head)
            return Rule(head, tuple(pos), tuple(neg))
        except ValueError as exc:
            raise ParseError(str(exc), head_token.line, head_token.col) from None

    def parse_program(self) -> Program:
        rules: list[Rule] = []
        while not self.check("end"):
            rules.append(self.parse_rule())
        if not rules:
            token = self.current
            raise ParseError("program must be nonempty", token.line, token.col)
        return Program(tuple(rules))

    def expect_end(self) -> None:
        if not self.check("end"):
            self.fail("end of input")


def parse_formula(text: str) -> Formula:
    """Parse a single formula; 'not' and '!' both negate."""
    parser = _Parser(text)
    formula = parser.parse_formula()
    parser.expect_end()
    return formula


def parse_program(text: str) -> Program:
    """Parse a program: '.'-terminated rules, '%' comments, nonempty."""
    return _Parser(text).parse_program()


def parse_rule(text: str) -> Rule:
    parser = _Parser(text)
    rule = parser.parse_rule()
    parser.expect_end()
    return rule


__all__ = [
    "ParseError",
    "parse_formula",
    "parse_program",
    "parse_rule",
    "tokenize",
]
