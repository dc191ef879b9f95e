import pytest
from hypothesis import given

from _helpers import bfs_ancestors, graphs, make_model
from metacheck import Classifier, Model, all_parents, check_model
from metacheck.wellformedness import (
    Violation,
    check_acyclicity,
    check_integrity,
    check_overlapping_arity,
)

OVERLAP = [("gB", "B", "A"), ("gC", "C", "A"), ("gD", "D", "A")]


def codes(violations):
    return [(v.code, v.subjects) for v in violations]


def test_acyclic_chain_has_no_cycle():
    assert check_acyclicity(make_model([("g", "B", "A")])) == []


def test_self_edge_is_a_cycle_and_a_self_generalization():
    m = make_model([("g", "A", "A")])
    assert codes(check_acyclicity(m)) == [("WF_CYCLE", ("A",))]
    assert codes(check_integrity(m)) == [("WF_SELF_GEN", ("g",))]


def test_three_cycle_flags_every_member():
    edges = [("g1", "A", "B"), ("g2", "B", "C"), ("g3", "C", "A")]
    # every member reaches itself in the raw edge list
    assert all(c in bfs_ancestors(edges, c) for c in "ABC")
    assert codes(check_acyclicity(make_model(edges))) == [
        ("WF_CYCLE", ("A",)), ("WF_CYCLE", ("B",)), ("WF_CYCLE", ("C",)),
    ]


def test_integrity_single_edge_is_clean():
    assert check_integrity(make_model([("g", "B", "A")])) == []


def test_duplicate_edge_reports_sorted_pair():
    m = make_model([("g2", "B", "A"), ("g1", "B", "A")])
    assert codes(check_integrity(m)) == [("WF_DUP_EDGE", ("g1", "g2"))]


def test_triplicate_edge_pairs_each_copy_with_the_first():
    m = make_model([("g1", "B", "A"), ("g2", "B", "A"), ("g3", "B", "A")])
    assert codes(check_integrity(m)) == [
        ("WF_DUP_EDGE", ("g1", "g2")), ("WF_DUP_EDGE", ("g1", "g3")),
    ]


def test_overlap_arity():
    assert check_overlapping_arity(make_model(OVERLAP, groups=[{"gC", "gD"}])) == []
    assert codes(check_overlapping_arity(make_model(OVERLAP, groups=[{"gC"}]))) == [
        ("WF_OVERLAP_ARITY", ("og1",)),
    ]
    assert check_overlapping_arity(make_model(OVERLAP)) == []


def test_check_model_overlap_hierarchy_is_well_formed():
    assert check_model(make_model(OVERLAP, groups=[{"gC", "gD"}])) == []


def test_check_model_composes_and_sorts():
    edges = OVERLAP + [("gX", "A", "D")]
    m = make_model(edges, groups=[{"gC"}])
    assert codes(check_model(m)) == [
        ("WF_CYCLE", ("A",)), ("WF_CYCLE", ("D",)), ("WF_OVERLAP_ARITY", ("og1",)),
    ]


def test_empty_model_is_well_formed():
    assert check_model(Model("empty")) == []


def test_violation_requires_known_code_and_subjects():
    with pytest.raises(ValueError):
        Violation("WF_CYCLE", (), "x")
    with pytest.raises(ValueError):
        Violation("NOPE", ("a",), "x")
    v = Violation("SEM_DISJOINT", ["i", "B", "C"], "msg")
    assert v.to_text() == "SEM_DISJOINT i B C: msg"
    assert v.to_dict() == {"code": "SEM_DISJOINT", "subjects": ["i", "B", "C"], "message": "msg"}


@given(graphs(acyclic=False))
def test_clean_report_implies_acyclic(g):
    names, edges = g
    m = make_model(edges, names)
    if check_model(m) == []:
        assert all(c not in all_parents(m, c) for c in names)


@given(graphs(acyclic=False))
def test_check_model_is_deterministic(g):
    names, edges = g
    m = make_model(edges, names)
    assert check_model(m) == check_model(m)
    assert check_model(m) == check_model(make_model(list(reversed(edges)), list(reversed(names))))


@given(graphs(acyclic=False))
def test_isolated_classifier_adds_no_violation(g):
    names, edges = g
    m = make_model(edges, names)
    extra = Model(m.name, list(m.classifiers.values()) + [Classifier("Isolated", True)], m.generalizations)
    assert check_model(extra) == check_model(m)
