"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

The checks themselves live in cannonball.verify so that ``cannonball verify``
and this suite measure the same thing. Runtime limits are asserted here
because the verify report leaves timings out to stay byte-deterministic.
"""
import json
import time

import pytest

from cannonball import config, exact, verify

from .conftest import ACCEPTANCE_LINES

RUNTIME_CAP = {1: 10.0, 4: 60.0, 13: 120.0}


def _summary(measured):
    text = json.dumps(measured, sort_keys=True, default=str)
    return text if len(text) <= 160 else text[:157] + "..."


def run_criterion(cid):
    check = verify.CHECKS[cid - 1]
    if cid in RUNTIME_CAP:
        exact.clear_cache()
    t0 = time.perf_counter()
    entry = verify._clean(verify._run_one(cid, check))
    elapsed = time.perf_counter() - t0
    cap = RUNTIME_CAP.get(cid)
    in_time = cap is None or elapsed <= cap
    ok = entry["passed"] and in_time
    timing = f" [{elapsed:.2f}s <= {cap:.0f}s]" if cap else ""
    line = f"{'PASS' if ok else 'FAIL'} criterion {cid:2d}: {entry['name']}{timing} {_summary(entry['measured'])}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return entry, elapsed, in_time


@pytest.mark.parametrize("cid", range(1, 14))
def test_criterion(cid):
    entry, elapsed, in_time = run_criterion(cid)
    assert entry["passed"], entry
    assert in_time, f"criterion {cid} took {elapsed:.1f}s"


def test_criterion_14_full_verify_determinism():
    base = config.current()
    reports = []
    for workers in (1, 8):
        code, report = verify.run_verify(base.with_(worker_count=workers))
        reports.append(verify.render_report(report))
    same = reports[0] == reports[1]
    line = f"{'PASS' if same else 'FAIL'} criterion 14: full verify, workers 1 vs 8 byte-identical"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert same


def test_report_has_one_entry_per_criterion():
    code, report = verify.run_verify(only={1, 2, 3, 10})
    assert [e["id"] for e in report["criteria"]] == [1, 2, 3, 10]
    assert all({"id", "name", "passed", "measured", "threshold"} <= set(e) for e in report["criteria"])
    assert code == 0


def test_tiny_budget_surfaces_resource_errors():
    exact.clear_cache()
    try:
        cfg = config.current().with_(memory_budget_bytes=1024**2)
        # criteria 1, 4 and 13 need 10^6-sized tables; 3 fits in 1 MiB and still runs
        code, report = verify.run_verify(cfg, only={1, 3, 4, 13})
    finally:
        exact.clear_cache()
    assert code == 1
    by_id = {e["id"]: e for e in report["criteria"]}
    assert by_id[3]["passed"]
    for cid in (1, 4, 13):
        entry = by_id[cid]
        assert not entry["passed"]
        assert "resource error" in entry["measured"]["error"]
        assert str(1024**2) in entry["measured"]["error"]
