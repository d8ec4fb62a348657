"""The nine headline checks, one test each.

Each test runs the same implementation the ``verify`` command uses and
prints a single ``[PASS]``/``[FAIL]`` line with the measured figures, so
``pytest -v -s tests/test_acceptance.py`` doubles as the sign-off sheet.
"""

import pytest

from hyplab import verify


@pytest.mark.parametrize(
    "criterion", verify.CRITERIA, ids=[c.__name__ for c in verify.CRITERIA]
)
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.line()
