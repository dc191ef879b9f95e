"""Line-oriented model (``.mdl``) and snapshot (``.snap``) formats.

Model file::

    model Vehicles
    class Vehicle abstract
    class Car
    gen gCar : Car -> Vehicle
    overlapping gCar gBoat

Snapshot file::

    snapshot s1
    instance c1 : Car, Vehicle

``#`` starts a comment and blank lines are ignored.  Names must be declared
before they are referenced.  Overlapping groups get ids ``og1``, ``og2``, ...
in the order they are declared.
"""

from __future__ import annotations

import re

from .metamodel import IDENT_RE, Classifier, Generalization, Model, OverlappingGroup
from .semantics import Instance, Snapshot

_TOKEN_RE = re.compile(r"\s*(?:(->)|([:,])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int = 1, file: str = "<string>") -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.file = file

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}: {self.message}"


class _Line:
    """Tokens of one source line with their 1-based columns."""

    def __init__(self, text: str, lineno: int, file: str) -> None:
        self.lineno = lineno
        self.file = file
        self.tokens: list[tuple[str, int]] = []
        body = text.split("#", 1)[0].rstrip()
        pos = 0
        while pos < len(body):
            m = _TOKEN_RE.match(body, pos)
            if m.group(4) is not None:
                raise self.error(f"unexpected character {m.group(4)!r}", m.start(4) + 1)
            tok = next(g for g in m.groups() if g is not None)
            self.tokens.append((tok, m.start(m.lastindex) + 1))
            pos = m.end()
        self.end_col = len(body) + 1
        self.pos = 0

    def error(self, message: str, column: int | None = None) -> ParseError:
        return ParseError(message, self.lineno, column or 1, self.file)

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def col(self) -> int:
        return self.tokens[self.pos][1] if not self.at_end() else self.end_col

    def ident(self, what: str) -> tuple[str, int]:
        if self.at_end():
            raise self.error(f"expected {what}", self.end_col)
        tok, col = self.tokens[self.pos]
        if not IDENT_RE.fullmatch(tok):
            raise self.error(f"expected {what}, got {tok!r}", col)
        self.pos += 1
        return tok, col

    def expect(self, symbol: str) -> None:
        if self.at_end() or self.tokens[self.pos][0] != symbol:
            got = "end of line" if self.at_end() else repr(self.tokens[self.pos][0])
            raise self.error(f"expected {symbol!r}, got {got}", self.col())
        self.pos += 1

    def accept(self, symbol: str) -> bool:
        if not self.at_end() and self.tokens[self.pos][0] == symbol:
            self.pos += 1
            return True
        return False

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected {self.tokens[self.pos][0]!r}", self.col())


def _lines(text: str, file: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _Line(raw, lineno, file)
        if line.tokens:
            yield line


def _header(lines, keyword: str, file: str) -> tuple[str, int]:
    first = next(lines, None)
    if first is None:
        raise ParseError(f"missing '{keyword}' header", 1, 1, file)
    kw, col = first.ident(f"'{keyword}' header")
    if kw != keyword:
        raise first.error(f"expected '{keyword}' header, got {kw!r}", col)
    name, _ = first.ident(f"{keyword} name")
    first.finish()
    return name, first.lineno


def parse_model(text: str, file: str = "<string>") -> Model:
    lines = _lines(text, file)
    name, _ = _header(lines, "model", file)
    classifiers: dict[str, Classifier] = {}
    gens: dict[str, Generalization] = {}
    groups: dict[str, OverlappingGroup] = {}

    for line in lines:
        kw, col = line.ident("declaration")
        if kw == "class":
            cid, ccol = line.ident("class name")
            if cid in classifiers:
                raise line.error(f"duplicate classifier {cid}", ccol)
            abstract = False
            if not line.at_end():
                word, wcol = line.ident("'abstract'")
                if word != "abstract":
                    raise line.error(f"expected 'abstract', got {word!r}", wcol)
                abstract = True
            line.finish()
            classifiers[cid] = Classifier(cid, abstract)
        elif kw == "gen":
            gid, gcol = line.ident("generalization name")
            if gid in gens:
                raise line.error(f"duplicate generalization {gid}", gcol)
            line.expect(":")
            ends = []
            for i in range(2):
                if i:
                    line.expect("->")
                cid, ccol = line.ident("classifier name")
                if cid not in classifiers:
                    raise line.error(f"undefined classifier {cid}", ccol)
                ends.append(cid)
            line.finish()
            gens[gid] = Generalization(gid, ends[0], ends[1])
        elif kw == "overlapping":
            members: list[str] = []
            while not line.at_end():
                gid, gcol = line.ident("generalization name")
                if gid not in gens:
                    raise line.error(f"undefined generalization {gid}", gcol)
                if gid in members:
                    raise line.error(f"generalization {gid} listed twice", gcol)
                members.append(gid)
            if len(members) < 2:
                raise line.error("overlapping needs at least two generalizations", line.end_col)
            oid = f"og{len(groups) + 1}"
            groups[oid] = OverlappingGroup(oid, frozenset(members))
        else:
            raise line.error(f"unknown declaration {kw!r}", col)

    return Model(name, classifiers, gens, groups)


def parse_snapshot(text: str, model: Model, file: str = "<string>") -> Snapshot:
    lines = _lines(text, file)
    name, _ = _header(lines, "snapshot", file)
    instances: dict[str, Instance] = {}
    for line in lines:
        kw, col = line.ident("declaration")
        if kw != "instance":
            raise line.error(f"unknown declaration {kw!r}", col)
        iid, icol = line.ident("instance name")
        if iid in instances:
            raise line.error(f"duplicate instance {iid}", icol)
        line.expect(":")
        cs: list[str] = []
        while True:
            cid, ccol = line.ident("classifier name")
            if cid not in model.classifiers:
                raise line.error(f"undefined classifier {cid}", ccol)
            if cid in cs:
                raise line.error(f"classifier {cid} listed twice", ccol)
            cs.append(cid)
            if not line.accept(","):
                break
        line.finish()
        instances[iid] = Instance(iid, frozenset(cs))
    return Snapshot(name, instances)


def render_model(model: Model) -> str:
    """Canonical text: classes and edges sorted by id, groups in their stored order."""
    out = [f"model {model.name}"]
    for cid in sorted(model.classifiers):
        out.append(f"class {cid}" + (" abstract" if model.classifiers[cid].is_abstract else ""))
    for gid in sorted(model.generalizations):
        g = model.generalizations[gid]
        out.append(f"gen {gid} : {g.child} -> {g.parent}")
    for grp in model.overlapping_groups.values():
        out.append("overlapping " + " ".join(sorted(grp.members)))
    return "\n".join(out) + "\n"


def render_snapshot(snapshot: Snapshot) -> str:
    out = [f"snapshot {snapshot.name}"]
    for iid in sorted(snapshot.instances):
        out.append(f"instance {iid} : " + ", ".join(sorted(snapshot.instances[iid].classifiers)))
    return "\n".join(out) + "\n"
