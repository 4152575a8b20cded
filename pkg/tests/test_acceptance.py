"""Acceptance gate: the thirteen numbered release criteria.

Each criterion runs through the same entry point the ``verify``
subcommand uses, at the default seed, and reports one PASS/FAIL line.
A criterion fails the gate if any of its checks fails; the assertion
message then carries the offending comparisons verbatim.
"""

import pytest

from noma_limits.verification import CRITERIA, DEFAULT_SEED, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA,
                         ids=[f"{c.index:02d}-{c.key}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    checks = run_criterion(criterion, DEFAULT_SEED)
    assert checks, "a criterion must perform at least one check"
    failed = [c for c in checks if not c.passed]
    verdict = "PASS" if not failed else "FAIL"
    with capsys.disabled():
        print(f"{verdict} criterion {criterion.index:02d} [{criterion.key}] "
              f"{criterion.title}: {len(checks) - len(failed)}/{len(checks)} checks")
    detail = "; ".join(
        f"{c.name}: observed {c.observed!r}, expected {c.expected!r} "
        f"within {c.tolerance!r}" for c in failed)
    assert not failed, detail


def test_every_criterion_is_numbered_uniquely():
    indices = [c.index for c in CRITERIA]
    assert indices == list(range(1, 14))
    assert len({c.key for c in CRITERIA}) == 13
