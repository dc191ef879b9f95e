"""Brute-force reference for snapshot validity.

``valid_by_definition`` works straight from the instance sets of each
classifier and keeps its own reachability and well-formedness logic.  It
calls none of the checks in :mod:`metacheck.semantics` and none of the
ancestor queries in :mod:`metacheck.metamodel`, so agreement between the
two is evidence rather than tautology.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from .metamodel import Model
from .semantics import IllFormedModelError, Instance, Snapshot, check_snapshot
from .textformats import render_snapshot
from .wellformedness import check_model

DEFAULT_CAP = 10**6
CAP_ENV = "METACHECK_CAP"


class EnumerationCapExceeded(Exception):
    def __init__(self, total: int, cap: int) -> None:
        super().__init__(f"enumeration would produce {total} snapshots, above the cap of {cap}")
        self.total = total
        self.cap = cap


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError(f"{CAP_ENV} must be non-negative, got {cap}")
    return cap


def _reach(start: str, edges: list[tuple[str, str]]) -> set[str]:
    """Ancestors of ``start`` by recursive depth-first search over the raw edge list."""
    found: set[str] = set()

    def visit(node: str) -> None:
        for child, parent in edges:
            if child == node and parent not in found:
                found.add(parent)
                visit(parent)

    visit(start)
    return found


def _is_well_formed(model: Model) -> bool:
    edges = [(g.child, g.parent) for g in model.generalizations.values()]
    if len(set(edges)) != len(edges):
        return False
    if any(c == p for c, p in edges):
        return False
    if any(c in _reach(c, edges) for c in model.classifiers):
        return False
    return all(len(grp.members) >= 2 for grp in model.overlapping_groups.values())


def valid_by_definition(model: Model, snapshot: Snapshot) -> bool:
    """Decide validity from the set conditions on classifier extents.

    1. child extent is a subset of parent extent, for every edge;
    2. each instance's classifier set is some single d plus everything above d;
    3. sibling extents under a common parent are disjoint unless the two
       edges share an overlapping group;
    4. an abstract classifier's extent is the union of its children's.
    """
    if not _is_well_formed(model):
        raise ValueError(f"model {model.name} is not well-formed")

    edges = [(g.child, g.parent) for g in model.generalizations.values()]
    extent = {c: set() for c in model.classifiers}
    for inst in snapshot.instances.values():
        for c in inst.classifiers:
            extent[c].add(inst.id)

    gens = list(model.generalizations.values())
    for g in gens:
        if not extent[g.child] <= extent[g.parent]:
            return False

    for inst in snapshot.instances.values():
        candidates = [d for d in inst.classifiers if {d} | _reach(d, edges) == set(inst.classifiers)]
        if len(candidates) != 1:
            return False

    for g, h in combinations(gens, 2):
        if g.parent != h.parent:
            continue
        if any({g.id, h.id} <= grp.members for grp in model.overlapping_groups.values()):
            continue
        if extent[g.child] & extent[h.child]:
            return False

    for c, cls in model.classifiers.items():
        if cls.is_abstract:
            union: set[str] = set()
            for g in gens:
                if g.parent == c:
                    union |= extent[g.child]
            if union != extent[c]:
                return False
    return True


def count_snapshots(model: Model, n: int) -> int:
    return (2 ** len(model.classifiers) - 1) ** n


def _subsets(model: Model) -> list[tuple[str, ...]]:
    names = sorted(model.classifiers)
    subs = [s for k in range(1, len(names) + 1) for s in combinations(names, k)]
    return sorted(subs)


def enumerate_snapshots(model: Model, n: int, cap: int | None = None) -> Iterator[Snapshot]:
    """Yield every snapshot with instances ``i1..in``, each on a non-empty classifier subset.

    Order is lexicographic over the per-instance subsets (sorted tuples).
    The cap is checked before anything is yielded.
    """
    if n < 0:
        raise ValueError("instance count must be non-negative")
    if not model.classifiers:
        raise ValueError("model has no classifiers to instantiate")
    cap = default_cap() if cap is None else cap
    total = count_snapshots(model, n)
    if total > cap:
        raise EnumerationCapExceeded(total, cap)
    return _generate(model, n)


def _generate(model: Model, n: int) -> Iterator[Snapshot]:
    ids = [f"i{k}" for k in range(1, n + 1)]
    for k, choice in enumerate(product(_subsets(model), repeat=n), start=1):
        yield Snapshot(f"s{k}", [Instance(i, frozenset(cs)) for i, cs in zip(ids, choice)])


@dataclass
class Disagreement:
    snapshot: str
    checker_verdict: bool
    oracle_verdict: bool


@dataclass
class CrossCheckReport:
    model_name: str
    instance_count: int
    total_snapshots: int = 0
    agreeing: int = 0
    accepted: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def cross_check(model: Model, n: int, cap: int | None = None) -> CrossCheckReport:
    """Compare ``check_snapshot`` with ``valid_by_definition`` on every enumerated snapshot."""
    violations = check_model(model)
    if violations:
        raise IllFormedModelError(violations)
    snapshots = enumerate_snapshots(model, n, cap)
    report = CrossCheckReport(model.name, n)
    for snap in snapshots:
        checker = not check_snapshot(model, snap)
        oracle = valid_by_definition(model, snap)
        report.total_snapshots += 1
        report.accepted += oracle
        if checker == oracle:
            report.agreeing += 1
        else:
            report.disagreements.append(Disagreement(render_snapshot(snap), checker, oracle))
    return report
