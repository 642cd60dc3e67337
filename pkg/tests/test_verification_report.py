import json

import pytest

from src.core.verification_report import VerificationReport


def test_passed_and_failures():
    report = VerificationReport("demo")
    report.add_unit("b", {"x": True, "y": False})
    report.add_unit("a", {"z": 0})
    assert not report.passed
    assert report.failures() == ["a: z", "b: y"]


def test_add_unit_extends_existing_unit():
    report = VerificationReport("demo")
    report.add_unit("u", {"x": True}, {"k": 1})
    report.add_unit("u", {"y": True}, {"m": 2})
    assert report.units["u"] == {"verdicts": {"x": True, "y": True}, "details": {"k": 1, "m": 2}}
    assert report.passed


def test_merge_keeps_evidence_flag():
    exact = VerificationReport("exact")
    exact.add_unit("a", {"x": True})
    numeric = VerificationReport("numeric", evidence_only=True)
    numeric.add_unit("b", {"found": True})
    numeric.add_log("seed 1")
    exact.merge(numeric)
    assert exact.evidence_only
    data = exact.to_json()
    assert list(data["units"]) == ["a", "b"]
    assert data["evidence"] == "numerical evidence, not a proof"
    assert data["logs"] == ["seed 1"]


def test_dumps_is_canonical():
    first, second = VerificationReport("r"), VerificationReport("r")
    first.add_unit("b", {"y": True, "x": True})
    first.add_unit("a", {"x": True})
    second.add_unit("a", {"x": True})
    second.add_unit("b", {"x": True, "y": True})
    assert first.dumps() == second.dumps()
    assert json.loads(first.dumps())["passed"] is True


def test_title_setter():
    report = VerificationReport("old")
    report.title = "new"
    assert report.title == "new"
    with pytest.raises(ValueError):
        report.title = 3


def test_show_summary(capsys):
    report = VerificationReport("summary", evidence_only=True)
    report.add_unit("unit", {"ok": False}, {"why": "because"})
    report.add_log("note")
    report.show_summary()
    out = capsys.readouterr().out
    assert "[FAIL] unit" in out
    assert "numerical evidence" in out
    assert " - note" in out
    assert out.rstrip().endswith("Result: FAIL")
