"""Runs every acceptance criterion of the small-family suite.

The suite runs once per session; each criterion is then its own test and
prints one PASS/FAIL line with its check count, runtime and limit.
"""

import time

import pytest

from actforge.suite import CRITERIA, run_suite

TOTAL_LIMIT = 300.0


@pytest.fixture(scope="module")
def suite_run():
    t = time.perf_counter()
    results = {r.number: r for r in run_suite("small", seed=0)}
    return results, time.perf_counter() - t


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(suite_run, number, capsys):
    results, _ = suite_run
    res = results[number]
    with capsys.disabled():
        print("\n" + res.line())
        for f in res.failures[:5]:
            print(f"    {f}")
    assert res.checked > 0
    assert res.passed, res.failures[:5]


def test_total_runtime(suite_run, capsys):
    results, elapsed = suite_run
    ok = elapsed < TOTAL_LIMIT and all(r.passed for r in results.values())
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] whole suite: {len(results)} criteria, {elapsed:.1f}s (limit {TOTAL_LIMIT:g}s)")
    assert elapsed < TOTAL_LIMIT
