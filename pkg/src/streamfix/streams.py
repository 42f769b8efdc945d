"""Sparse finite streams over discrete time and the intervals that describe them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

Atom = str
Cell = tuple[int, Atom]

INF = math.inf


class BoundExceeded(Exception):
    """An enumeration or completion check would exceed its configured bound."""

    def __init__(self, what: str, count: int | float, bound: int):
        self.what = what
        self.count = count
        self.bound = bound
        super().__init__(f"{what}: {count} exceeds bound {bound}")


@dataclass(frozen=True)
class Interval:
    """Closed interval of time points; ``lo > hi`` encodes the empty interval."""

    lo: int
    hi: int | float  # math.inf for a right-open interval

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_finite(self) -> bool:
        return self.is_empty or self.hi != INF

    def contains(self, t: int) -> bool:
        return self.lo <= t <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return EMPTY_INTERVAL
        return Interval(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        """Smallest interval containing both operands."""
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def points(self) -> range:
        if self.is_empty:
            return range(0)
        if not self.is_finite:
            raise ValueError(f"cannot iterate the points of the infinite interval {self}")
        return range(self.lo, int(self.hi) + 1)

    def width(self) -> int | float:
        return 0 if self.is_empty else self.hi - self.lo + 1

    def __str__(self) -> str:
        if self.is_empty:
            return "[]"
        hi = "inf" if self.hi == INF else str(self.hi)
        return f"[{self.lo},{hi}]"


EMPTY_INTERVAL = Interval(1, 0)


def window_interval(t: int, left: int | float, right: int | float) -> Interval:
    """Range of time points a window reaching ``left`` back and ``right`` ahead of ``t`` covers."""
    lo = 1 if left == INF else max(1, t - left)
    hi = INF if right == INF else t + right
    if lo > hi:
        return EMPTY_INTERVAL
    return Interval(int(lo), hi if hi == INF else int(hi))


def _validate_atom(atom: object) -> Atom:
    if not isinstance(atom, str) or not atom:
        raise ValueError(f"atoms must be nonempty strings, got {atom!r}")
    return atom


class Stream:
    """Immutable stream: a sparse map from time points (>= 1) to nonempty atom sets."""

    __slots__ = ("_entries", "_key", "_cell_count")

    def __init__(self, entries: Mapping[int, Iterable[Atom]] | None = None):
        normalized: dict[int, frozenset[Atom]] = {}
        for t, atoms in (entries or {}).items():
            if not isinstance(t, int) or isinstance(t, bool) or t < 1:
                raise ValueError(f"time points must be integers >= 1, got {t!r}")
            atom_set = frozenset(_validate_atom(a) for a in atoms)
            if atom_set:
                normalized[t] = atom_set
        object.__setattr__(self, "_entries", dict(sorted(normalized.items())))
        object.__setattr__(
            self, "_key", tuple((t, tuple(sorted(v))) for t, v in self._entries.items())
        )
        object.__setattr__(self, "_cell_count", sum(len(v) for v in self._entries.values()))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Stream is immutable")

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> "Stream":
        grouped: dict[int, set[Atom]] = {}
        for t, atom in cells:
            grouped.setdefault(t, set()).add(atom)
        return cls(grouped)

    def at(self, t: int) -> frozenset[Atom]:
        return self._entries.get(t, frozenset())

    def times(self) -> tuple[int, ...]:
        return tuple(self._entries)

    def cells(self) -> Iterator[Cell]:
        for t, atoms in self._key:
            for atom in atoms:
                yield (t, atom)

    @property
    def cell_count(self) -> int:
        return self._cell_count

    @property
    def is_empty(self) -> bool:
        return not self._entries

    def support(self) -> Interval:
        """Tightest interval covering all nonempty time points; empty for the empty stream."""
        if not self._entries:
            return EMPTY_INTERVAL
        times = self.times()
        return Interval(times[0], times[-1])

    def is_substream(self, other: "Stream") -> bool:
        return all(atoms <= other.at(t) for t, atoms in self._entries.items())

    def __le__(self, other: "Stream") -> bool:
        return self.is_substream(other)

    def union(self, other: "Stream") -> "Stream":
        merged: dict[int, set[Atom]] = {t: set(v) for t, v in self._entries.items()}
        for t, atoms in other._entries.items():
            merged.setdefault(t, set()).update(atoms)
        return Stream(merged)

    def __or__(self, other: "Stream") -> "Stream":
        return self.union(other)

    def difference(self, other: "Stream") -> "Stream":
        return Stream({t: atoms - other.at(t) for t, atoms in self._entries.items()})

    def __sub__(self, other: "Stream") -> "Stream":
        return self.difference(other)

    def restrict(self, interval: Interval) -> "Stream":
        return Stream({t: v for t, v in self._entries.items() if interval.contains(t)})

    def window(self, left: int | float, right: int | float, t: int) -> "Stream":
        """Drop every cell outside ``[max(1, t-left), t+right]``."""
        return self.restrict(window_interval(t, left, right))

    @property
    def order_key(self) -> tuple:
        """Sort key: fewer cells first, then lexicographic on (time, atom) pairs."""
        return (self._cell_count, self._key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Stream) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        body = "; ".join(f"{t}:{' '.join(sorted(v))}" for t, v in self._entries.items())
        return f"<Stream {{{body}}}>"


EMPTY_STREAM = Stream()


@dataclass(frozen=True)
class ThreeValuedStream:
    """Interval of streams: everything in ``lower`` holds, everything outside ``upper`` does not."""

    lower: Stream
    upper: Stream

    def __post_init__(self):
        if not self.lower.is_substream(self.upper):
            raise ValueError("lower bound must be a substream of the upper bound")

    @property
    def undefined(self) -> Stream:
        return self.upper - self.lower


def precision_leq(p: ThreeValuedStream, q: ThreeValuedStream) -> bool:
    """True when q is at least as precise: q's interval sits inside p's."""
    return p.lower.is_substream(q.lower) and q.upper.is_substream(p.upper)


def enumerate_substreams(stream: Stream, bound: int = 24) -> list[Stream]:
    """All substreams, ordered by cell count then lexicographically by cells."""
    cells = list(stream.cells())
    if len(cells) > bound:
        raise BoundExceeded("substream enumeration over cells", len(cells), bound)
    out: list[Stream] = []
    for k in range(len(cells) + 1):
        for combo in combinations(cells, k):
            out.append(Stream.from_cells(combo))
    return out
