"""Command-line entry point.

Exit codes: 0 no violations, 1 violations found, 2 parse error,
3 usage or I/O error.  Everything destined for stdout is buffered and
written once, so output is byte-identical across runs on the same input.
"""

from __future__ import annotations

import argparse
import json
import sys
from enum import IntEnum
from pathlib import Path

from .oracle import EnumerationCapExceeded, cross_check, default_cap, enumerate_snapshots
from .semantics import check_snapshot
from .textformats import ParseError, parse_model, parse_snapshot, render_snapshot
from .wellformedness import check_model


class ExitCode(IntEnum):
    OK = 0
    VIOLATIONS = 1
    PARSE_ERROR = 2
    USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _report(fmt: str, model: str, snapshot: str | None, violations) -> tuple[str, int]:
    code = ExitCode.VIOLATIONS if violations else ExitCode.OK
    if fmt == "json":
        doc = {
            "model": model,
            "snapshot": snapshot,
            "valid": not violations,
            "violations": [v.to_dict() for v in violations],
        }
        return json.dumps(doc, indent=2) + "\n", code
    if not violations:
        return "OK\n", code
    return "".join(v.to_text() + "\n" for v in violations), code


def _load_model(path: str):
    return parse_model(_read(path), file=path)


def cmd_validate_model(args) -> tuple[str, int]:
    model = _load_model(args.model)
    return _report(args.format, model.name, None, check_model(model))


def cmd_check(args) -> tuple[str, int]:
    model = _load_model(args.model)
    snapshot = parse_snapshot(_read(args.snapshot), model, file=args.snapshot)
    wf = check_model(model)
    if wf:
        # Snapshot semantics are undefined over an ill-formed hierarchy.
        return _report(args.format, model.name, None, wf)
    return _report(args.format, model.name, snapshot.name, check_snapshot(model, snapshot))


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    try:
        return default_cap()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args) -> tuple[str, int]:
    model = _load_model(args.model)
    wf = check_model(model)
    if wf:
        return _report("text", model.name, None, wf)
    chunks = []
    for snap in enumerate_snapshots(model, args.instances, _cap(args)):
        if args.filter != "all":
            valid = not check_snapshot(model, snap)
            if valid != (args.filter == "valid"):
                continue
        chunks.append(render_snapshot(snap))
    body = "\n".join(chunks)
    if chunks:
        body += "\n"
    return body + f"total: {len(chunks)}\n", ExitCode.OK


def cmd_crosscheck(args) -> tuple[str, int]:
    model = _load_model(args.model)
    wf = check_model(model)
    if wf:
        return _report("text", model.name, None, wf)
    report = cross_check(model, args.instances, _cap(args))
    lines = [
        f"model: {report.model_name}",
        f"instances: {report.instance_count}",
        f"accepted: {report.accepted}",
        f"agreeing: {report.agreeing}/{report.total_snapshots}",
    ]
    for d in report.disagreements:
        lines.append("")
        lines.append(
            f"DISAGREEMENT checker={'accept' if d.checker_verdict else 'reject'}"
            f" oracle={'accept' if d.oracle_verdict else 'reject'}"
        )
        lines.append(d.snapshot.rstrip("\n"))
    return "\n".join(lines) + "\n", (ExitCode.OK if report.ok else ExitCode.VIOLATIONS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metacheck", description="Check class models and snapshots against generalization semantics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate-model", help="run well-formedness checks on a model")
    p.add_argument("model")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate_model)

    p = sub.add_parser("check", help="check a snapshot against a model")
    p.add_argument("model")
    p.add_argument("snapshot")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list every snapshot with N instances")
    p.add_argument("model")
    p.add_argument("--instances", "-n", type=_non_negative, required=True)
    p.add_argument("--filter", choices=("valid", "invalid", "all"), default="valid")
    p.add_argument("--cap", type=_non_negative)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("crosscheck", help="compare the checker with the brute-force oracle")
    p.add_argument("model")
    p.add_argument("--instances", "-n", type=_non_negative, required=True)
    p.add_argument("--cap", type=_non_negative)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out, code = args.func(args)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return ExitCode.PARSE_ERROR
    except (UsageError, EnumerationCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitCode.USAGE
    sys.stdout.write(out)
    sys.stdout.flush()
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
