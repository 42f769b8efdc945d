"""Level mappings: extraction from the fixpoint trace, verification, circularity."""

import pytest

from streamfix import (
    EMPTY_STREAM,
    Partitioning,
    Stream,
    detect_circular,
    extract_level_mapping,
    verify_level_mapping,
)

S2 = Stream({u: {"c"} for u in range(4, 10)})
S3 = Stream({u: {"a", "b"} for u in (3, 4, 6, 7, 8)})


class TestPartitioning:
    def test_base_level_must_be_empty(self):
        with pytest.raises(ValueError):
            Partitioning((Stream({1: {"a"}}),))
        with pytest.raises(ValueError):
            Partitioning(())

    def test_from_levels_prepends_the_base(self):
        part = Partitioning.from_levels([Stream({1: {"a"}})])
        assert part.parts[0] == EMPTY_STREAM
        assert part.level_count == 1
        assert part.union() == Stream({1: {"a"}})

    def test_later_levels_must_be_nonempty_and_disjoint(self):
        with pytest.raises(ValueError, match="level 2"):
            Partitioning.from_levels([Stream({1: {"a"}}), EMPTY_STREAM])
        with pytest.raises(ValueError, match="overlaps"):
            Partitioning.from_levels([Stream({1: {"a"}}), Stream({1: {"a"}, 2: {"b"}})])


class TestExtraction:
    def test_big_answer_has_three_levels(self, ex):
        part = extract_level_mapping(ex.program, ex.data, ex.gamma, ex.t, ex.big)
        assert part is not None
        assert part.parts == (EMPTY_STREAM, ex.data, S2, S3)
        report = verify_level_mapping(part, ex.program, ex.data, ex.gamma, ex.t)
        assert report.valid and report.total

    def test_small_answer_has_two_levels(self, ex):
        part = extract_level_mapping(ex.program, ex.data, ex.gamma, ex.t, ex.small)
        assert part.parts == (
            EMPTY_STREAM,
            ex.data | Stream({2: {"a"}}),
            Stream({3: {"a"}, 4: {"a"}}),
        )
        report = verify_level_mapping(part, ex.program, ex.data, ex.gamma, ex.t)
        assert report.valid and report.total

    def test_circular_model_has_no_total_mapping(self, circular):
        part = extract_level_mapping(
            circular.program, EMPTY_STREAM, frozenset(), circular.t, circular.loop
        )
        assert part is None

    def test_extraction_requires_a_model(self, ex):
        with pytest.raises(ValueError):
            extract_level_mapping(ex.program, ex.data, ex.gamma, ex.t, ex.data)


class TestVerification:
    def test_swapped_levels_report_the_first_bad_level(self, ex):
        swapped = Partitioning.from_levels([ex.data, S3, S2])
        report = verify_level_mapping(swapped, ex.program, ex.data, ex.gamma, ex.t)
        assert not report.valid and not report.total
        assert report.first_violation == 2
        assert set(report.offending) == set(S3.cells())

    def test_everything_at_once_is_rejected(self, ex):
        lump = Partitioning.from_levels([ex.big])
        report = verify_level_mapping(lump, ex.program, ex.data, ex.gamma, ex.t)
        assert not report.valid
        assert report.first_violation == 1
        assert set(report.offending) == set((ex.big - ex.data).cells())

    def test_valid_but_partial_union(self, ex):
        # the data alone is justified, but it is not a model of the program
        part = Partitioning.from_levels([ex.data])
        report = verify_level_mapping(part, ex.program, ex.data, ex.gamma, ex.t)
        assert report.valid
        assert not report.total


class TestCircularity:
    def test_detects_the_even_loop(self, circular):
        assert detect_circular(circular.program, circular.loop, circular.t)

    def test_grounded_answers_are_not_circular(self, ex):
        assert not detect_circular(ex.program, ex.big, ex.t, ex.data, ex.gamma)
        assert not detect_circular(ex.program, ex.small, ex.t, ex.data, ex.gamma)

    def test_non_answers_are_not_circular(self, circular):
        assert not detect_circular(circular.program, EMPTY_STREAM, circular.t)
