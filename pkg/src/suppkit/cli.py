"""Command-line front end: ``suppkit run`` and ``suppkit verify``."""

from __future__ import annotations

import argparse
import sys

from .errors import SemanticError, SessionSyntaxError, SuppkitError
from .runner import COMPUTATION, OK, USAGE, VERIFICATION, VIOLATION, exit_status, format_reports, run_session
from .session import parse_session
from .verify import SUITES, run_suite, workers_from_env


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suppkit", description="Exact support and co-support computations.")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run a session file ('-' reads stdin)")
    r.add_argument("file")
    r.add_argument("--format", choices=("text", "structured"), default="text")
    r.add_argument("--seed", type=int, default=42, help="default seed for verify commands")
    r.add_argument("--bound", type=int, default=None, help="default window bound for co-support and adic checks")
    r.add_argument("--print-canonical", action="store_true", help="print the canonical session text and exit")
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--count", type=int, default=None)
    v.add_argument("--format", choices=("text", "structured"), default="text")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_run(args) -> int:
    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    try:
        doc = parse_session(text)
    except SessionSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return USAGE
    except SemanticError as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return USAGE
    except SuppkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return COMPUTATION
    if args.print_canonical:
        sys.stdout.write(doc.format())
        return OK
    opts = {"seed": args.seed, "bound": args.bound, "workers": workers_from_env()}
    reports = run_session(doc, opts)
    sys.stdout.write(format_reports(reports, args.format))
    return exit_status(reports)


def _cmd_verify(args) -> int:
    import json

    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    status = OK
    blocks = []
    for name in names:
        res = run_suite(name, args.seed, args.count, workers_from_env())
        if args.format == "structured":
            row = {"suite": name, "seed": str(args.seed), "passed": str(sum(r.passed for r in res.rows))}
            row["total"] = str(len(res.rows))
            for r in res.rows:
                row[f"{r.case}/{r.check}"] = "pass" if r.passed else "fail"
            blocks.append(row)
        else:
            print(res.format())
        if res.violation:
            status = VIOLATION
        elif not res.all_passed and status != VIOLATION:
            status = VERIFICATION
    if args.format == "structured":
        print(json.dumps(blocks, indent=1, ensure_ascii=False))
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.cmd == "run":
        return _cmd_run(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
