"""Command-line front end.

Exit code 0 means every check passed; undetermined outcomes count as
failures for CI purposes but keep their own label in the output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import closure, report
from .fontaine import CERTIFIED, PLAIN
from .parser import ParseError, parse_expr


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "text"), default="text")
    sub.add_argument("--no-timestamp", action="store_true")


def _emit(rep: report.Report, fmt: str) -> int:
    if fmt == "json":
        sys.stdout.write(rep.to_json())
    else:
        sys.stdout.write(rep.to_text())
    return 0 if rep.ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rootclose",
        description="Exact verification of root-closure, sequence and Witt-vector constructions",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    ex = subs.add_parser("example", help="run the worked example suite")
    ex.add_argument("--p", type=int, default=5)
    ex.add_argument("--degree", type=int, default=3)
    ex.add_argument("--depth", type=int, default=3)
    ex.add_argument("--witt-len", type=int, default=2)
    ex.add_argument("--mmax", type=int, default=None)
    ex.add_argument("--mode", choices=(CERTIFIED, PLAIN), default=CERTIFIED)
    _add_common(ex)

    pr = subs.add_parser("props", help="run the randomized property suites")
    pr.add_argument("--seed", type=int, default=0)
    _add_common(pr)

    ev = subs.add_parser("eval", help="parse an expression and test closure membership")
    ev.add_argument("expr")
    ev.add_argument("--check-closure", action="store_true")
    ev.add_argument("--mmax", type=int, default=5)
    ev.add_argument("--p", type=int, default=5)
    ev.add_argument("--degree", type=int, default=3)
    _add_common(ev)

    rv = subs.add_parser("revalidate", help="re-check every certificate in a report")
    rv.add_argument("report")
    _add_common(rv)

    args = parser.parse_args(argv)

    if args.command == "example":
        cfg = report.Config(
            p=args.p,
            degree=args.degree,
            depth=args.depth,
            witt_length=args.witt_len,
            m_max=args.mmax,
            timestamp=not args.no_timestamp,
            closure_mode=args.mode,
        )
        try:
            rep = report.run_example_suite(cfg)
        except ValueError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
        return _emit(rep, args.format)

    if args.command == "props":
        cfg = report.Config(seed=args.seed, timestamp=not args.no_timestamp)
        return _emit(report.run_property_suites(cfg), args.format)

    if args.command == "eval":
        try:
            elem = parse_expr(args.expr, args.p, args.degree)
        except (ParseError, ValueError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
        out: dict = {
            "level": elem.level,
            "denom_exp": elem.denom_exp,
            "num_terms": report.terms_to_json(elem.num.terms),
        }
        status = 0
        if args.check_closure:
            got = closure.membership(elem, args.mmax)
            if isinstance(got, closure.ClosureCert):
                out["closure"] = {"member": True, "certificate": report.cert_to_json(got)}
            else:
                definite = closure.definite_nonmember(elem)
                out["closure"] = {
                    "member": False,
                    "m_max": got.m_max,
                    "definite_nonmember": definite,
                }
                status = 1
        if args.format == "json":
            sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write(f"level {out['level']}, denominator PI^{out['denom_exp']}\n")
            sys.stdout.write(f"numerator terms: {out['num_terms']}\n")
            if "closure" in out:
                c = out["closure"]
                if c["member"]:
                    sys.stdout.write(f"closure member: m = {c['certificate']['m']}\n")
                elif c["definite_nonmember"]:
                    sys.stdout.write("not a closure member (structurally impossible)\n")
                else:
                    sys.stdout.write(f"no certificate up to m = {c['m_max']}\n")
        return status

    if args.command == "revalidate":
        with open(args.report, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return _emit(report.revalidate_report(data), args.format)

    raise AssertionError("unreachable")  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
