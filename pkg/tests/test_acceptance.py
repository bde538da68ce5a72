"""Acceptance gate: every criterion of the verification suite at full
strength, one printed pass/fail line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines live;
the same checks back the ``steinerstar verify`` subcommand.
"""

import pytest

from steinerstar.verify import CRITERIA


@pytest.mark.parametrize("number,criterion", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(number, criterion):
    result = criterion(False)
    status = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {number} [{result.name}]: {status} - {result.detail}")
    if result.counterexample:
        print(f"ACCEPTANCE {number}: COUNTEREXAMPLE pending human review")
    assert result.passed, f"criterion {number} ({result.name}): {result.detail}"
