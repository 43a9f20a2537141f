"""The self-check matrix should be green and well-formed."""

import pytest

from laddertrees.verify import SUITES, CheckResult, run_suite


def test_all_suites_pass():
    results = run_suite("all")
    names = [r.name for r in results]
    assert len(names) == len(set(names))
    failed = [r for r in results if not r.passed]
    assert not failed, "\n".join(f"{r.name}: {r.detail}" for r in failed)
    assert len(results) >= 20


def test_single_suite_is_a_subset():
    sub = run_suite("counts")
    assert 0 < len(sub) < len(run_suite("all"))
    assert all(isinstance(r, CheckResult) for r in sub)


def test_unknown_suite_is_rejected():
    assert "all" in SUITES
    with pytest.raises(ValueError):
        run_suite("nonsense")
