import dataclasses
import json

import pytest

from largest_singleton.identities import (
    BindingError,
    UnknownIdentityError,
    check,
    check_record,
    grid,
    lookup,
    registry,
    run_suite,
)

ALL_IDS = sorted(registry())


def test_registry_size():
    assert len(registry()) == 52
    assert len(set(ALL_IDS)) == 52


def test_lookup():
    rec = lookup("3.4")
    assert rec.id == "3.4" and rec.params == ("n",)
    assert "D" in rec.reference
    with pytest.raises(UnknownIdentityError):
        lookup("9.9")


def test_check_examples():
    assert check("2.4", {"n": 2, "m": 1, "k": 1}).passed
    assert check("3.4", {"n": 1}).passed


def test_binding_validation():
    with pytest.raises(BindingError):
        check("3.4", {})
    with pytest.raises(BindingError):
        check("3.4", {"n": 1, "q": 0})
    with pytest.raises(BindingError):
        check("3.4", {"n": -1})


@pytest.mark.parametrize("id", ["2.4", "3.4", "4.8", "5.2.lam", "3.charlier1"])
def test_perturbed_rhs_fails(id):
    rec = lookup(id)
    bindings = {p: 1 for p in rec.params}
    original = rec.rhs
    bad = dataclasses.replace(rec, rhs=lambda *a, **kw: original(*a, **kw) + 1)
    report = check_record(bad, bindings)
    assert report.status == "fail"
    assert report.witness["bindings"] == bindings
    assert report.to_dict()["witness"]


def test_raising_side_is_a_failure():
    rec = lookup("3.4")

    def boom(**kw):
        raise ZeroDivisionError("nope")

    report = check_record(dataclasses.replace(rec, lhs=boom), {"n": 2})
    assert report.status == "fail" and "ZeroDivisionError" in report.witness["error"]


def test_grid_semantics():
    rec = lookup("2.4")
    assert grid(rec, {}) == []
    assert grid(rec, {"n": 1}) == []
    assert len(grid(rec, {"n": 1}, defaults=True)) == 2 * 7 * 7
    assert len(grid(rec, {"n": 1, "m": 0, "k": 2})) == 6
    assert len(grid(rec, {"n": 100, "m": 0, "k": 0})) == rec.limit + 1


def test_empty_ranges():
    assert run_suite({}) == []


@pytest.mark.parametrize("id", ALL_IDS)
def test_each_identity_small_grid(id):
    reports = run_suite({"n": 3, "m": 3, "k": 3}, ids=[id])
    assert reports
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_symbolic_sides_keep_their_variables():
    # the lambda / y identities must be compared as polynomials, not at points
    rec = lookup("2.2A")
    assert "lam" in rec.lhs(n=3, m=1).variables()
    rec = lookup("4.8")
    assert "y" in rec.lhs(**{p: 3 for p in rec.params}).variables()


def test_workers_do_not_change_output():
    ranges = {"n": 3, "m": 2, "k": 2}
    one = json.dumps([r.to_dict() for r in run_suite(ranges, workers=1)])
    eight = json.dumps([r.to_dict() for r in run_suite(ranges, workers=8)])
    assert one == eight


def test_report_order():
    reports = run_suite({"n": 2, "m": 1, "k": 1})
    keys = [r.sort_key() for r in reports]
    assert keys == sorted(keys)
