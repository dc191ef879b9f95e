import inspect
from itertools import combinations

import pytest
from hypothesis import given, settings

from _helpers import make_model, make_snapshot, model_and_snapshot
from metacheck import check_snapshot, cross_check, enumerate_snapshots, valid_by_definition
from metacheck import oracle, semantics
from metacheck.oracle import EnumerationCapExceeded, count_snapshots

SIBLINGS = [("gB", "B", "A"), ("gC", "C", "A")]
OVERLAP_E = [("gB", "B", "A"), ("gC", "C", "A"), ("gD", "D", "A"), ("gEC", "E", "C"), ("gED", "E", "D")]


def test_valid_by_definition_examples():
    partition = make_model(SIBLINGS, abstract={"A"})
    assert valid_by_definition(partition, make_snapshot({"i": {"B", "A"}}))
    assert not valid_by_definition(make_model(classes=["A", "B"]), make_snapshot({"i": {"A", "B"}}))
    assert valid_by_definition(partition, make_snapshot({}))


def test_valid_by_definition_refuses_ill_formed_model():
    with pytest.raises(ValueError):
        valid_by_definition(make_model([("g", "A", "A")]), make_snapshot({}))


def test_oracle_shares_no_code_with_the_checker():
    names = set(valid_by_definition.__code__.co_names)
    for fn in (oracle._reach, oracle._is_well_formed):
        names |= set(fn.__code__.co_names)
    forbidden = {"all_parents", "specializations_of", "instances_of", "check_model"}
    forbidden |= {n for n, _ in inspect.getmembers(semantics, inspect.isfunction)}
    assert names.isdisjoint(forbidden)


@pytest.mark.parametrize("classes, n, expected", [(["A"], 1, 1), (["A", "B"], 1, 3), (["A", "B", "C"], 2, 49)])
def test_enumeration_counts(classes, n, expected):
    m = make_model(classes=classes)
    listed = list(enumerate_snapshots(m, n))
    assert len(listed) == expected == count_snapshots(m, n) == (2 ** len(classes) - 1) ** n


def test_enumeration_content_and_order():
    m = make_model(classes=["A", "B"])
    listed = [tuple(sorted(s.instances["i1"].classifiers)) for s in enumerate_snapshots(m, 1)]
    assert listed == [("A",), ("A", "B"), ("B",)]
    two = list(enumerate_snapshots(m, 2))
    assert len({tuple(sorted((i, tuple(sorted(x.classifiers))) for i, x in s.instances.items())) for s in two}) == 9
    assert all(set(s.instances) == {"i1", "i2"} for s in two)


def test_enumeration_zero_instances():
    assert [s.instances for s in enumerate_snapshots(make_model(classes=["A"]), 0)] == [{}]


def test_enumeration_cap(monkeypatch):
    m = make_model(classes=["A", "B", "C"])
    with pytest.raises(EnumerationCapExceeded):
        enumerate_snapshots(m, 2, cap=48)
    assert len(list(enumerate_snapshots(m, 2, cap=49))) == 49
    monkeypatch.setenv("METACHECK_CAP", "10")
    with pytest.raises(EnumerationCapExceeded):
        enumerate_snapshots(m, 2)
    monkeypatch.setenv("METACHECK_CAP", "ten")
    with pytest.raises(ValueError):
        enumerate_snapshots(m, 2)


def test_cross_check_chain():
    r = cross_check(make_model([("g", "B", "A")]), 1)
    assert (r.total_snapshots, r.agreeing, r.disagreements) == (3, 3, [])
    assert r.accepted == 2


def test_cross_check_overlapping_two_instances():
    r = cross_check(make_model(OVERLAP_E, groups=[{"gC", "gD"}]), 2)
    assert r.total_snapshots == 31 ** 2
    assert r.disagreements == []
    assert r.agreeing + len(r.disagreements) == r.total_snapshots


def test_cross_check_zero_instances():
    r = cross_check(make_model(SIBLINGS), 0)
    assert (r.total_snapshots, r.agreeing) == (1, 1)


def test_cross_check_catches_a_broken_checker(monkeypatch):
    monkeypatch.setattr(semantics, "check_abstract_coverage", lambda m, s: [])
    r = cross_check(make_model(SIBLINGS, abstract={"A"}), 1)
    assert r.disagreements
    assert all(d.checker_verdict and not d.oracle_verdict for d in r.disagreements)


@settings(max_examples=400)
@given(model_and_snapshot())
def test_oracle_agrees_with_checker_on_random_inputs(ms):
    m, s = ms
    assert (check_snapshot(m, s) == []) == valid_by_definition(m, s)


def test_oracle_verdicts_are_stable():
    m = make_model(OVERLAP_E, groups=[{"gC", "gD"}])
    first = [valid_by_definition(m, s) for s in enumerate_snapshots(m, 1)]
    second = [valid_by_definition(m, s) for s in enumerate_snapshots(m, 1)]
    assert first == second
    # one accepted single-instance snapshot per classifier: its own closure
    assert sum(first) == 5
