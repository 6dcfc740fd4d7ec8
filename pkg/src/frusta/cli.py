"""
frusta command line.

Exit status: 0 when everything checks out, 1 for usage or parse errors,
2 when a certificate (or a golden value) fails verification.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import catalog, certfile, formulas, report
from .dissection import Level, Verdict, verify_certificate
from .errors import FrustaError, NotAnIsometry
from .exact import parse_rational, render_rational
from .export import DEFAULT_DIGITS, certificate_objects, to_obj

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


def _err(msg: str) -> None:
    print(f"frusta: {msg}", file=sys.stderr)


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    if isinstance(v, list):
        return [_plain(x) for x in v]
    if hasattr(v, "numerator") and not isinstance(v, (bool, int)):
        return render_rational(v)
    return v


def render_verdict(v: Verdict) -> str:
    lines = []
    for r in v.results:
        line = f"{r.name}: {r.level.value}"
        if r.reason:
            line += f" ({r.reason})"
        lines.append(line)
    for n in v.notes:
        lines.append(f"note: {n}")
    lines.append(f"verdict: {v.level.value}")
    return "\n".join(lines)


def verdict_json(v: Verdict) -> dict:
    return {
        "level": v.level.value,
        "passed": v.passed,
        "results": [
            {"name": r.name, "kind": r.kind, "level": r.level.value, "reason": r.reason,
             "data": {k: _plain(x) for k, x in r.data.items()}}
            for r in v.results
        ],
        "notes": list(v.notes),
    }


def cmd_verify(args) -> int:
    try:
        cert = certfile.load(args.file)
    except OSError as exc:
        _err(f"cannot read {args.file}: {exc.strerror}")
        return EXIT_USAGE
    except NotAnIsometry as exc:
        # a solid posed by something that is not a rigid motion
        print(f"verdict: {Level.FAILED.value} (invalid motion: {exc})")
        return EXIT_FAILED
    except FrustaError as exc:
        _err(f"{args.file}: {exc}")
        return EXIT_USAGE
    v = verify_certificate(cert)
    if args.json:
        print(json.dumps(verdict_json(v), indent=1, ensure_ascii=False))
    else:
        print(render_verdict(v))
    return EXIT_OK if v.passed else EXIT_FAILED


def cmd_build(args) -> int:
    try:
        params = [parse_rational(p) for p in args.params]
        cert = catalog.build_scenario(args.scenario, params)
    except FrustaError as exc:
        _err(str(exc))
        return EXIT_USAGE
    text = certfile.dumps(cert)
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {args.output}: {exc.strerror}")
        return EXIT_USAGE
    print(f"wrote {args.output}: {len(cert.pieces)} pieces, {len(cert.claims)} claims")
    return EXIT_OK


def cmd_report(args) -> int:
    rows = report.golden_rows()
    if args.json:
        print(json.dumps({"rows": [r.as_dict() for r in rows], "all_ok": all(r.ok for r in rows)},
                         indent=1, ensure_ascii=False))
    else:
        print(report.render_table(rows))
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAILED


def cmd_export(args) -> int:
    src = args.input
    try:
        if os.path.exists(src):
            cert = certfile.load(src)
            objects = certificate_objects(cert, args.side or "", args.with_solids)
        else:
            spec = catalog.SolidSpec.parse(src)
            solid = catalog.make_solid(spec)
            objects = [(solid.label or str(spec), solid)]
    except OSError as exc:
        _err(f"cannot read {src}: {exc.strerror}")
        return EXIT_USAGE
    except (FrustaError, TypeError) as exc:
        _err(f"{src}: {exc}")
        return EXIT_USAGE
    if args.digits < 1:
        _err("--digits must be at least 1")
        return EXIT_USAGE
    text = to_obj(objects, args.digits)
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {args.output}: {exc.strerror}")
        return EXIT_USAGE
    print(f"wrote {args.output}: {len(objects)} objects")
    return EXIT_OK


def cmd_trace(args) -> int:
    try:
        a, b, h = (parse_rational(x) for x in (args.a, args.b, args.h))
        fn = formulas.moscow_trace if args.style == "moscow" else formulas.nine_chapters_trace
        t = fn(a, b, h, unit=args.unit)
    except FrustaError as exc:
        _err(str(exc))
        return EXIT_USAGE
    print(t.render())
    adds, mults, divs = t.op_counts
    print(f"operations: additions {adds}, multiplications {mults}, divisions {divs}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frusta", description="Exact frustum and pyramid dissection certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a certificate file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true", help="machine-readable verdict")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("build", help="write the certificate of a catalog scenario")
    b.add_argument("scenario", choices=sorted(catalog.SCENARIOS))
    b.add_argument("params", nargs="*", help="rational parameters such as 3 or 7/2")
    b.add_argument("-o", "--output", help="output file (default: standard output)")
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("report", help="recompute every golden value")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_report)

    e = sub.add_parser("export", help="write OBJ geometry for a certificate file or a solid spec")
    e.add_argument("input", help="certificate path, or a spec such as symmetric_frustum:4,2,6")
    e.add_argument("-o", "--output", help="output file (default: standard output)")
    e.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits for decimals")
    e.add_argument("--side", choices=("source", "target"), help="pose pieces on this side")
    e.add_argument("--with-solids", action="store_true", help="also export sources, targets and aux solids")
    e.set_defaults(func=cmd_export)

    t = sub.add_parser("trace", help="step-by-step evaluation of a historical schedule")
    t.add_argument("style", choices=("moscow", "nine-chapters"))
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("h")
    t.add_argument("--unit", help="unit label shown in the header")
    t.set_defaults(func=cmd_trace)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
