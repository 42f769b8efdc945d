"""Shared fixtures: the running example and the one-shot property-suite run."""

from types import SimpleNamespace

import pytest

from streamfix import Stream, parse_program

RUNNING_PROGRAM = """\
@2 a :- not @7 c.
[inf,0] box a :- not c.
[1,inf] box c :- not @2 a.
[2,3] box (a & b) :- [0,1] diamond c, box d.
"""

CIRCULAR_PROGRAM = """\
a :- box b.
b :- box a.
"""


@pytest.fixture(scope="session")
def ex():
    """The worked example: program, data, background atoms, both answer streams."""
    return SimpleNamespace(
        program=parse_program(RUNNING_PROGRAM),
        program_text=RUNNING_PROGRAM,
        data=Stream({1: {"a"}, 5: {"a", "b"}, 10: {"c"}}),
        gamma=frozenset({"d"}),
        t=5,
        big=Stream(
            {
                1: {"a"},
                3: {"a", "b"},
                4: {"a", "b", "c"},
                5: {"a", "b", "c"},
                6: {"a", "b", "c"},
                7: {"a", "b", "c"},
                8: {"a", "b", "c"},
                9: {"c"},
                10: {"c"},
            }
        ),
        small=Stream(
            {1: {"a"}, 2: {"a"}, 3: {"a"}, 4: {"a"}, 5: {"a", "b"}, 10: {"c"}}
        ),
        stage2=Stream(
            {
                1: {"a"},
                4: {"c"},
                5: {"a", "b", "c"},
                6: {"c"},
                7: {"c"},
                8: {"c"},
                9: {"c"},
                10: {"c"},
            }
        ),
        fired_model=Stream(
            {
                3: {"a", "b"},
                4: {"a", "b", "c"},
                5: {"a", "b", "c"},
                6: {"a", "b", "c"},
                7: {"a", "b", "c"},
                8: {"a", "b", "c"},
                9: {"c"},
                10: {"c"},
            }
        ),
    )


@pytest.fixture(scope="session")
def circular():
    return SimpleNamespace(
        program=parse_program(CIRCULAR_PROGRAM),
        program_text=CIRCULAR_PROGRAM,
        t=3,
        loop=Stream({3: {"a", "b"}}),
    )


@pytest.fixture(scope="session")
def property_results():
    """Run every randomized suite exactly once per session."""
    import prop_suites

    return prop_suites.run_all()


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose each phase's outcome so the acceptance banner can report pass/fail
    outcome = yield
    report = outcome.get_result()
    setattr(item, f"outcome_{report.when}", report.outcome)
