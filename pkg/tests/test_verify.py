"""The verification runner and its tolerance file."""

import json

import pytest

from fracdiff import verify


def test_default_tolerances_cover_every_key_used():
    tol = verify.default_tolerances()
    checks = verify.run_suites(None, tol)
    assert checks
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


def test_suite_order_and_filter():
    checks = verify.run_suites(["cable", "kummer"], verify.default_tolerances())
    suites = {c.suite for c in checks}
    assert suites == {"cable", "kummer"}


def test_override_merges(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"bromwich_abs": 0.5}))
    tol = verify.load_tolerances(path)
    assert tol["bromwich_abs"] == 0.5
    assert tol["kummer_identity"] == verify.default_tolerances()["kummer_identity"]


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"typo": 1}))
    with pytest.raises(KeyError):
        verify.load_tolerances(path)


def test_check_line_format():
    line = verify.Check("s", "n", True, 1.5e-12, 1e-9, 0.25).line()
    assert line == "PASS s/n worst=1.500e-12 tol=1.000e-09 (0.25s)"
