"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Every tolerance is pinned inside zepl.verify; this module only drives the
suites and reports.
"""

import pytest

from zepl import verify


@pytest.mark.parametrize("name", list(verify.ACCEPTANCE), ids=list(verify.ACCEPTANCE))
def test_acceptance_criterion(name):
    description, runner = verify.ACCEPTANCE[name]
    checks = runner()
    ok = all(c.passed for c in checks)
    print(f"\nACCEPTANCE {description}: {'PASS' if ok else 'FAIL'}")
    for c in checks:
        print(f"    [{'PASS' if c.passed else 'FAIL'}] {c.name}: "
              f"{c.value:.3e} (tol {c.tolerance:g}) {c.detail}")
    failing = [c.name for c in checks if not c.passed]
    assert not failing, f"criterion {name!r} failed: {failing}"
