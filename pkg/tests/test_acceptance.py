"""One line per acceptance criterion, at the tolerances the criteria state.

Run with ``pytest -s tests/test_acceptance.py`` to see the pass/fail matrix.
"""

from __future__ import annotations

import json

import pytest

from fractalconvex.suite import CRITERIA, DEFAULT_SEED, run_suite


@pytest.fixture(scope="module")
def summary():
    return run_suite(DEFAULT_SEED)


@pytest.mark.parametrize("cid", [c.cid for c in CRITERIA])
def test_criterion(summary, cid):
    row = next(r for r in summary["criteria"] if r["id"] == cid)
    print(f"\n{cid} {'PASS' if row['passed'] else 'FAIL'} {row['title']}")
    assert row["passed"], json.dumps(row["details"], indent=1)


def test_suite_is_byte_identical_under_seed(summary):
    assert json.dumps(run_suite(DEFAULT_SEED)) == json.dumps(summary)
