"""Stream text/JSON forms and the gamma stanza."""

import pytest

from streamfix import (
    EMPTY_INTERVAL,
    INF,
    Interval,
    Stream,
    format_stream_text,
    interval_to_pair,
    parse_stream_text,
    stream_from_entries,
    stream_to_entries,
)


class TestStreamText:
    def test_roundtrip(self):
        stream = Stream({1: {"a"}, 5: {"a", "b"}, 10: {"c"}})
        text = format_stream_text(stream)
        assert text == "1: a\n5: a b\n10: c\n"
        parsed, gamma = parse_stream_text(text)
        assert parsed == stream
        assert gamma is None

    def test_empty_stream(self):
        assert format_stream_text(Stream()) == ""
        parsed, gamma = parse_stream_text("")
        assert parsed == Stream() and gamma is None

    def test_comments_and_blank_lines(self):
        parsed, _ = parse_stream_text("# header\n\n1: a  # trailing\n\n2: b\n")
        assert parsed == Stream({1: {"a"}, 2: {"b"}})

    def test_gamma_stanza(self):
        parsed, gamma = parse_stream_text("gamma: d e\n1: a\ngamma: f\n")
        assert parsed == Stream({1: {"a"}})
        assert gamma == frozenset({"d", "e", "f"})

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("1 a\n", "line 1"),
            ("x: a\n", "not an integer"),
            ("0: a\n", "start at 1"),
            ("1: a\n1: b\n", "line 2: duplicate"),
            ("3:\n", "lists no atoms"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, fragment):
        with pytest.raises(ValueError, match=fragment):
            parse_stream_text(text)


class TestJsonForms:
    def test_entries_roundtrip(self):
        stream = Stream({2: {"b", "a"}, 7: {"c"}})
        entries = stream_to_entries(stream)
        assert entries == [{"t": 2, "atoms": ["a", "b"]}, {"t": 7, "atoms": ["c"]}]
        assert stream_from_entries(entries) == stream
        assert stream_from_entries([]) == Stream()

    def test_interval_to_pair(self):
        assert interval_to_pair(Interval(1, 5)) == [1, 5]
        assert interval_to_pair(Interval(3, INF)) == [3, "inf"]
        assert interval_to_pair(EMPTY_INTERVAL) == []
