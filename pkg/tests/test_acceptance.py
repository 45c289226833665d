"""Acceptance criteria at full scale, one test (and one printed line) each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines; the same checks back the ``suite acceptance`` command.
"""

import json

import pytest

from mustafin import acceptance


@pytest.fixture(scope="module")
def full_report():
    lines = []
    report = acceptance.run_all(quick=False, echo=lines.append)
    for line in lines:
        print(line)
    return report


def _lookup(report, num):
    for res in report["results"]:
        if res["criterion"] == num:
            return res
    raise AssertionError(f"criterion {num} missing")


@pytest.mark.parametrize("num", sorted(acceptance.CRITERIA))
def test_criterion(full_report, num):
    res = _lookup(full_report, num)
    status = "PASS" if res["passed"] else "FAIL"
    print(f"criterion {num:2d} [{status}] {res['name']}")
    assert res["passed"], json.dumps(res["details"], indent=2, default=str)[:2000]


def test_all_passed(full_report):
    assert full_report["all_passed"]
