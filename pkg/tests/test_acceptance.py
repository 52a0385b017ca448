"""Acceptance criteria, one test each, run at their stated tolerances and
time limits.  A PASS/FAIL line per criterion is printed in the terminal
summary.  Criterion 12 runs last and covers every graph solved before it."""

import pytest

from acyclic.reproduce import CHECKS


@pytest.mark.parametrize("number", sorted(CHECKS), ids=lambda n: f"criterion_{n:02d}")
def test_acceptance(number, acceptance_lines):
    result = CHECKS[number]()
    line = result.line()
    acceptance_lines.append(line)
    print(line)
    for detail in result.details[:10]:
        print("   ", detail)
    assert result.passed, line
