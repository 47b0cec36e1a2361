"""
Tests for the verification report objects.
"""

from verification import CheckReport, SuiteReport, merge_passed


def test_check_keeps_worst_witness():
    """Test the largest deviation and its witness are kept"""
    check = CheckReport("law", tol=1e-9)
    check.update(1e-12, "a")
    check.update(1e-3, "b")
    check.update(1e-6, "c")
    assert check.max_deviation == 1e-3
    assert check.witness == "b"
    assert check.checked == 3
    assert not check.passed
    assert check.to_dict() == {"check": "law", "max_deviation": 1e-3, "pass": False, "witness": "b"}


def test_skipped_check_passes():
    """Test a skipped check counts as passed and reports its reason"""
    check = CheckReport("big").skip("too large")
    assert check.passed
    assert check.to_dict()["skipped"] == "too large"


def test_suite_merge():
    """Test suite reduction and the failing witness"""
    suite = SuiteReport("demo")
    suite.new_check("ok").update(0.0, "x")
    bad = suite.new_check("bad")
    bad.update(0.5, "y")
    suite.new_check("skipped").skip("limit")
    assert suite.max_deviation == 0.5
    assert not suite.passed
    out = suite.to_dict()
    assert out["witness"] == "bad: y"
    assert out["skipped"] == ["skipped"]
    assert len(out["checks"]) == 3
    assert not merge_passed([suite])
    assert merge_passed([SuiteReport("empty")])
