"""Runs the ten acceptance criteria; prints one pass/fail line each."""
import pytest

from plumgraph.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.ok, result.detail


def test_summary(capsys):
    lines = []
    for fn in CRITERIA:
        r = fn()
        lines.append(r.line())
    with capsys.disabled():
        print()
        for line in lines:
            print(line)
    assert all("[PASS]" in line for line in lines)
