"""Acceptance gate: one pass/fail line per bundled invariant suite entry.

Run with -s (or look at the captured stdout of failures) to see the
PASS/FAIL line for every criterion.
"""

import pytest

from polyhom import selftest


@pytest.mark.parametrize(
    "cid,description,fn",
    selftest.CRITERIA,
    ids=[cid for cid, _, _ in selftest.CRITERIA],
)
def test_criterion(cid, description, fn):
    failures = fn()
    status = "FAIL" if failures else "PASS"
    print(f"{status} {cid}: {description}")
    assert not failures, "\n".join(failures[:20])
