"""Abstract syntax of classifiers, generalizations and overlapping groups.

A :class:`Model` is immutable once built.  Ancestor closures are computed
eagerly at construction so that every query afterwards is a pure read.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class UnknownIdentifierError(KeyError):
    """Raised when a query names an identifier that does not resolve."""

    def __init__(self, kind: str, ident: str) -> None:
        super().__init__(f"unknown {kind} {ident!r}")
        self.kind = kind
        self.ident = ident

    def __str__(self) -> str:
        return self.args[0]


def check_ident(value: str, kind: str = "identifier") -> str:
    if not isinstance(value, str) or not IDENT_RE.fullmatch(value):
        raise ValueError(f"invalid {kind} {value!r}")
    return value


@dataclass(frozen=True)
class Classifier:
    id: str
    is_abstract: bool = False

    def __post_init__(self) -> None:
        check_ident(self.id, "classifier id")


@dataclass(frozen=True)
class Generalization:
    """Directed edge from ``child`` (the specific classifier) to ``parent``."""

    id: str
    child: str
    parent: str

    def __post_init__(self) -> None:
        check_ident(self.id, "generalization id")
        check_ident(self.child, "classifier id")
        check_ident(self.parent, "classifier id")


@dataclass(frozen=True)
class OverlappingGroup:
    id: str
    members: frozenset[str]

    def __post_init__(self) -> None:
        check_ident(self.id, "group id")
        object.__setattr__(self, "members", frozenset(self.members))
        for m in self.members:
            check_ident(m, "generalization id")


def _freeze(items, kind: str) -> Mapping:
    if isinstance(items, Mapping):
        items = list(items.values())
    table = {}
    for item in items:
        if item.id in table:
            raise ValueError(f"duplicate {kind} id {item.id!r}")
        table[item.id] = item
    return MappingProxyType(table)


@dataclass(frozen=True)
class Model:
    """A referentially closed set of classifiers, edges and overlapping groups.

    ``classifiers``, ``generalizations`` and ``overlapping_groups`` accept
    either iterables of the element type or mappings keyed by id; they are
    stored as read-only mappings.  Construction enforces referential
    closure only.  Cycles, self edges and undersized groups are legal here
    and are reported by :mod:`metacheck.wellformedness`.
    """

    name: str
    classifiers: Mapping[str, Classifier] = field(default_factory=dict)
    generalizations: Mapping[str, Generalization] = field(default_factory=dict)
    overlapping_groups: Mapping[str, OverlappingGroup] = field(default_factory=dict)
    _ancestors: Mapping[str, frozenset[str]] = field(
        init=False, repr=False, compare=False
    )
    _specializations: Mapping[str, frozenset[str]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        check_ident(self.name, "model name")
        set_ = object.__setattr__
        set_(self, "classifiers", _freeze(self.classifiers, "classifier"))
        set_(self, "generalizations", _freeze(self.generalizations, "generalization"))
        set_(self, "overlapping_groups", _freeze(self.overlapping_groups, "group"))

        for g in self.generalizations.values():
            for end in (g.child, g.parent):
                if end not in self.classifiers:
                    raise ValueError(
                        f"generalization {g.id} refers to undefined classifier {end}"
                    )
        for grp in self.overlapping_groups.values():
            for m in sorted(grp.members):
                if m not in self.generalizations:
                    raise ValueError(
                        f"group {grp.id} refers to undefined generalization {m}"
                    )

        parents: dict[str, set[str]] = {c: set() for c in self.classifiers}
        specs: dict[str, set[str]] = {c: set() for c in self.classifiers}
        for g in self.generalizations.values():
            parents[g.child].add(g.parent)
            specs[g.parent].add(g.id)
        set_(self, "_ancestors", MappingProxyType(
            {c: _closure(c, parents) for c in self.classifiers}
        ))
        set_(self, "_specializations", MappingProxyType(
            {c: frozenset(s) for c, s in specs.items()}
        ))

    def classifier(self, cid: str) -> Classifier:
        try:
            return self.classifiers[cid]
        except KeyError:
            raise UnknownIdentifierError("classifier", cid) from None

    def generalization(self, gid: str) -> Generalization:
        try:
            return self.generalizations[gid]
        except KeyError:
            raise UnknownIdentifierError("generalization", gid) from None


def _closure(start: str, parents: Mapping[str, set[str]]) -> frozenset[str]:
    # Visited-set closure: terminates on cycles, and then start may be in it.
    seen: set[str] = set()
    stack = list(parents[start])
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        stack.extend(parents[c])
    return frozenset(seen)


def all_parents(model: Model, c: str) -> frozenset[str]:
    """Return every classifier reachable from ``c`` by one or more child->parent steps."""
    model.classifier(c)
    return model._ancestors[c]


def specializations_of(model: Model, c: str) -> frozenset[str]:
    """Ids of the generalizations whose parent is ``c``."""
    model.classifier(c)
    return model._specializations[c]
