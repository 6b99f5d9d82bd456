"""The nine acceptance criteria, each at exact equality and within its time
budget. Every test prints one PASS/FAIL line."""

import pytest

from collar_algebra import suite


@pytest.mark.parametrize("index", range(1, len(suite.CRITERIA) + 1))
def test_criterion(index, capsys):
    name, fn = suite.CRITERIA[index - 1]
    out = fn(0)
    status = "PASS" if out["ok"] else "FAIL"
    with capsys.disabled():
        print(f"\n[acceptance {index}] {status} {name} ({out['ms']} ms, budget {out['budget_ms']} ms)")
    assert out["ok"], out
