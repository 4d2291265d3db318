from __future__ import annotations

from spiralblock.audits import AuditReport, CheckResult, run_audit


def test_check_line():
    assert CheckResult("x", True).line() == "PASS x"
    assert CheckResult("y", False, "why").line() == "FAIL y: why"


def test_report_ok():
    r = AuditReport()
    r.add("a", True)
    assert r.ok
    r.add("b", False)
    assert not r.ok and r.to_json()["ok"] is False


def test_d1_audit(d1):
    report = run_audit(d1, eta_alt=4, kappas=[0, 2])
    assert report.ok, [c.line() for c in report.checks if not c.ok]
    names = [c.name for c in report.checks]
    assert "heart(b) = (-1)^kappa(b) b" in names
    assert len(names) == len(set(names))


def test_wrong_kappas_fail(d1):
    report = run_audit(d1, kappas=[1, 2], extra_seeds=())
    assert not report.ok


def test_d2_audit(d2):
    assert run_audit(d2).ok
