"""Text and JSON forms for streams and intervals."""

from __future__ import annotations

from .streams import Interval, Stream

GAMMA_KEYWORD = "gamma:"


def parse_stream_text(text: str) -> tuple[Stream, frozenset[str] | None]:
    """Read `t: atom atom` lines; '#' starts a comment, a `gamma:` line lists
    background atoms. Returns the stream and the gamma stanza (None if absent)."""
    entries: dict[int, set[str]] = {}
    gamma: set[str] | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(GAMMA_KEYWORD):
            atoms = line[len(GAMMA_KEYWORD):].split()
            gamma = (gamma or set()) | set(atoms)
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"line {number}: expected 't: atom ...' or 'gamma: atom ...'")
        try:
            t = int(head.strip())
        except ValueError:
            raise ValueError(f"line {number}: time point {head.strip()!r} is not an integer") from None
        if t < 1:
            raise ValueError(f"line {number}: time points start at 1, got {t}")
        if t in entries:
            raise ValueError(f"line {number}: duplicate time point {t}")
        atoms = rest.split()
        if not atoms:
            raise ValueError(f"line {number}: time point {t} lists no atoms")
        entries[t] = set(atoms)
    return Stream(entries), frozenset(gamma) if gamma is not None else None


def format_stream_text(stream: Stream) -> str:
    """Canonical text form: one `t: atom ...` line per time point, sorted."""
    lines = [f"{t}: {' '.join(sorted(stream.at(t)))}" for t in stream.times()]
    return "\n".join(lines) + ("\n" if lines else "")


def stream_to_entries(stream: Stream) -> list[dict]:
    return [{"t": t, "atoms": sorted(stream.at(t))} for t in stream.times()]


def stream_from_entries(entries: list[dict]) -> Stream:
    grouped: dict[int, set[str]] = {}
    for entry in entries:
        grouped.setdefault(entry["t"], set()).update(entry["atoms"])
    return Stream(grouped)


def interval_to_pair(interval: Interval) -> list:
    if interval.is_empty:
        return []
    hi = "inf" if not interval.is_finite else int(interval.hi)
    return [interval.lo, hi]
