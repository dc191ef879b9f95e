"""Snapshot checks: conformance, identity, disjointness and abstract coverage.

Also provides the instance-level operations (direct type, indirect types,
``oclIsTypeOf``/``oclIsKindOf``) that those checks are stated in terms of.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Mapping

from .metamodel import Model, UnknownIdentifierError, all_parents, check_ident, specializations_of
from .wellformedness import (
    SEM_ABSTRACT,
    SEM_CONFORMANCE,
    SEM_DISJOINT,
    SEM_IDENTITY,
    Violation,
    check_model,
    sort_violations,
)


class IllFormedModelError(ValueError):
    """Snapshot semantics were requested for a model that fails well-formedness."""

    def __init__(self, violations: list[Violation]) -> None:
        super().__init__(
            "model is not well-formed: " + "; ".join(v.to_text() for v in violations)
        )
        self.violations = violations


@dataclass(frozen=True)
class Instance:
    id: str
    classifiers: frozenset[str]

    def __post_init__(self) -> None:
        check_ident(self.id, "instance id")
        object.__setattr__(self, "classifiers", frozenset(self.classifiers))
        if not self.classifiers:
            raise ValueError(f"instance {self.id} must instantiate at least one classifier")


@dataclass(frozen=True)
class Snapshot:
    name: str
    instances: Mapping[str, Instance] = field(default_factory=dict)

    def __post_init__(self) -> None:
        check_ident(self.name, "snapshot name")
        items = self.instances
        if isinstance(items, Mapping):
            items = list(items.values())
        table: dict[str, Instance] = {}
        for inst in items:
            if inst.id in table:
                raise ValueError(f"duplicate instance id {inst.id!r}")
            table[inst.id] = inst
        object.__setattr__(self, "instances", MappingProxyType(table))

    def instance(self, iid: str) -> Instance:
        try:
            return self.instances[iid]
        except KeyError:
            raise UnknownIdentifierError("instance", iid) from None


def _resolve(model: Model, snapshot: Snapshot, iid: str, c: str | None = None) -> Instance:
    inst = snapshot.instance(iid)
    if c is not None:
        model.classifier(c)
    return inst


def instances_of(model: Model, snapshot: Snapshot, c: str) -> frozenset[str]:
    model.classifier(c)
    return frozenset(i.id for i in snapshot.instances.values() if c in i.classifiers)


def _matches_closure(model: Model, classifiers: frozenset[str], c: str) -> bool:
    ancestors = all_parents(model, c)
    return classifiers == ancestors | {c}


def is_direct_instance_of(model: Model, snapshot: Snapshot, i: str, c: str) -> bool:
    """True iff the instance's classifier set is exactly ``c`` plus its ancestors."""
    inst = _resolve(model, snapshot, i, c)
    return _matches_closure(model, inst.classifiers, c)


ocl_is_type_of = is_direct_instance_of


def _direct(model: Model, inst: Instance) -> str | None:
    found = [c for c in sorted(inst.classifiers) if _matches_closure(model, inst.classifiers, c)]
    if len(found) > 1:
        # Two candidates would each be an ancestor of the other.
        raise RuntimeError(
            f"instance {inst.id} has several direct classifiers {found}; model must be cyclic"
        )
    return found[0] if found else None


def direct_of(model: Model, snapshot: Snapshot, i: str) -> str | None:
    return _direct(model, _resolve(model, snapshot, i))


def indirect_of(model: Model, snapshot: Snapshot, i: str) -> frozenset[str]:
    inst = _resolve(model, snapshot, i)
    d = _direct(model, inst)
    return inst.classifiers - {d} if d is not None else inst.classifiers


def ocl_is_kind_of(model: Model, snapshot: Snapshot, i: str, c: str) -> bool:
    """True iff the direct type of ``i`` is ``c`` or one of ``c``'s descendants."""
    inst = _resolve(model, snapshot, i, c)
    d = _direct(model, inst)
    return d is not None and (d == c or c in all_parents(model, d))


def has_same_overlapping_constraint(model: Model, g1: str, g2: str) -> bool:
    model.generalization(g1)
    model.generalization(g2)
    return any(
        g1 in grp.members and g2 in grp.members
        for grp in model.overlapping_groups.values()
    )


def check_conformance(model: Model, snapshot: Snapshot) -> list[Violation]:
    out = []
    for iid in sorted(snapshot.instances):
        cs = snapshot.instances[iid].classifiers
        for g in model.generalizations.values():
            if g.child in cs and g.parent not in cs:
                out.append(Violation(
                    SEM_CONFORMANCE, (iid, g.child, g.parent),
                    f"instance {iid} is in {g.child} but not in its parent {g.parent}",
                ))
    return out


def check_unique_identity(model: Model, snapshot: Snapshot) -> list[Violation]:
    out = []
    for iid in sorted(snapshot.instances):
        cs = snapshot.instances[iid].classifiers
        n = sum(1 for d in cs if _matches_closure(model, cs, d))
        if n != 1:
            out.append(Violation(
                SEM_IDENTITY, (iid,),
                f"instance {iid} has {n} direct classifiers among {{{', '.join(sorted(cs))}}}; expected exactly 1",
            ))
    return out


def check_disjointness(model: Model, snapshot: Snapshot) -> list[Violation]:
    found: set[tuple[str, str, str]] = set()
    for c in model.classifiers:
        specs = sorted(specializations_of(model, c))
        for gid, hid in combinations(specs, 2):
            if has_same_overlapping_constraint(model, gid, hid):
                continue
            a = model.generalizations[gid].child
            b = model.generalizations[hid].child
            shared = instances_of(model, snapshot, a) & instances_of(model, snapshot, b)
            lo, hi = sorted((a, b))
            found.update((iid, lo, hi) for iid in shared)
    return [
        Violation(
            SEM_DISJOINT, subj,
            f"instance {subj[0]} belongs to both {subj[1]} and {subj[2]}, which are disjoint",
        )
        for subj in sorted(found)
    ]


def check_abstract_coverage(model: Model, snapshot: Snapshot) -> list[Violation]:
    out = []
    for c in sorted(model.classifiers):
        if not model.classifiers[c].is_abstract:
            continue
        covered: set[str] = set()
        for gid in specializations_of(model, c):
            covered |= instances_of(model, snapshot, model.generalizations[gid].child)
        for iid in sorted(instances_of(model, snapshot, c) - covered):
            out.append(Violation(
                SEM_ABSTRACT, (iid, c),
                f"instance {iid} of abstract classifier {c} belongs to none of its subclasses",
            ))
    return out


def check_snapshot(model: Model, snapshot: Snapshot) -> list[Violation]:
    """All snapshot violations, sorted.  An empty list means the snapshot is accepted.

    Raises :class:`IllFormedModelError` if ``model`` has well-formedness
    violations and :class:`UnknownIdentifierError` if an instance names a
    classifier the model lacks.
    """
    wf = check_model(model)
    if wf:
        raise IllFormedModelError(wf)
    for inst in snapshot.instances.values():
        for c in sorted(inst.classifiers):
            model.classifier(c)
    return sort_violations(
        check_conformance(model, snapshot)
        + check_unique_identity(model, snapshot)
        + check_disjointness(model, snapshot)
        + check_abstract_coverage(model, snapshot)
    )
