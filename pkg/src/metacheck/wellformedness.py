"""Snapshot-independent checks on a model, and the ``Violation`` report type."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .metamodel import Model, all_parents

WF_CYCLE = "WF_CYCLE"
WF_SELF_GEN = "WF_SELF_GEN"
WF_DUP_EDGE = "WF_DUP_EDGE"
WF_OVERLAP_ARITY = "WF_OVERLAP_ARITY"
SEM_CONFORMANCE = "SEM_CONFORMANCE"
SEM_IDENTITY = "SEM_IDENTITY"
SEM_DISJOINT = "SEM_DISJOINT"
SEM_ABSTRACT = "SEM_ABSTRACT"

CODES = frozenset({
    WF_CYCLE, WF_SELF_GEN, WF_DUP_EDGE, WF_OVERLAP_ARITY,
    SEM_CONFORMANCE, SEM_IDENTITY, SEM_DISJOINT, SEM_ABSTRACT,
})


@dataclass(frozen=True)
class Violation:
    """One broken constraint.

    ``subjects`` is positional for codes whose subjects play distinct roles
    (SEM_CONFORMANCE is ``(instance, child, parent)``, SEM_ABSTRACT is
    ``(instance, classifier)``).  Symmetric subjects are sorted.
    """

    code: str
    subjects: tuple[str, ...]
    message: str

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown violation code {self.code!r}")
        object.__setattr__(self, "subjects", tuple(self.subjects))
        if not self.subjects:
            raise ValueError("violation needs at least one subject")

    @property
    def sort_key(self) -> tuple[str, tuple[str, ...]]:
        return (self.code, self.subjects)

    def to_text(self) -> str:
        return f"{self.code} {' '.join(self.subjects)}: {self.message}"

    def to_dict(self) -> dict:
        return {"code": self.code, "subjects": list(self.subjects), "message": self.message}


def sort_violations(violations) -> list[Violation]:
    return sorted(violations, key=lambda v: v.sort_key)


def check_acyclicity(model: Model) -> list[Violation]:
    return [
        Violation(WF_CYCLE, (c,), f"classifier {c} is its own ancestor (circular inheritance)")
        for c in sorted(model.classifiers)
        if c in all_parents(model, c)
    ]


def check_integrity(model: Model) -> list[Violation]:
    out = []
    by_ends: dict[tuple[str, str], list[str]] = defaultdict(list)
    for gid in sorted(model.generalizations):
        g = model.generalizations[gid]
        if g.child == g.parent:
            out.append(Violation(
                WF_SELF_GEN, (gid,), f"generalization {gid} has {g.child} as both child and parent"
            ))
        by_ends[(g.child, g.parent)].append(gid)
    for (child, parent), gids in by_ends.items():
        first = gids[0]
        for dup in gids[1:]:
            out.append(Violation(
                WF_DUP_EDGE, tuple(sorted((first, dup))),
                f"generalization {dup} duplicates {first} ({child} -> {parent})",
            ))
    return out


def check_overlapping_arity(model: Model) -> list[Violation]:
    return [
        Violation(
            WF_OVERLAP_ARITY, (grp.id,),
            f"overlapping group {grp.id} constrains {len(grp.members)} generalization(s); needs more than 1",
        )
        for grp in model.overlapping_groups.values()
        if len(grp.members) <= 1
    ]


def check_model(model: Model) -> list[Violation]:
    """Run every well-formedness rule; result is sorted by (code, subjects)."""
    return sort_violations(
        check_integrity(model) + check_acyclicity(model) + check_overlapping_arity(model)
    )
