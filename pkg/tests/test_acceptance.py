"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import json

import pytest

from fibrum.verify import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=[f"criterion-{n:02d}-{CRITERIA[n][0]}" for n in sorted(CRITERIA)])
def test_criterion(number):
    r = run_criterion(number)
    line = r.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert r.passed, json.dumps(r.details, default=str)[:4000]
