"""Exit criteria; each prints one PASS/FAIL line (run with ``pytest -s`` to see them)."""

import pytest

from qverify.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA], ids=[t for _, t, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.detail
