"""Every acceptance criterion, at its stated runtime limit. One PASS/FAIL line each."""

import pytest

from rnnfsm.acceptance import CRITERIA, format_result, run_criterion

RESULTS = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion):
    result = run_criterion(criterion)
    RESULTS.append(result)
    line = format_result(result)
    print(line)
    assert result.passed, line
