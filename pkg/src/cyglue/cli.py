"""Command line: verify, sweep, report, certify-ample.

Exit codes: 0 all expectations met, 1 an expectation (or certificate) failed,
2 bad input, 3 resource limit hit by exact cone elimination.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from pathlib import Path

from .cones import ConeTooLarge
from .k3_cones import oguiso_ample_certificate, wehler_is_ample
from .scenarios import (
    PRESETS,
    STAGES,
    Report,
    ScenarioError,
    StageError,
    canonical_json,
    load_scenario,
    override_center,
    render_sweep_text,
    render_text,
    run,
    sweep,
)
from .wehler import wehler_lattice

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ScenarioError(f"{what}: {text!r} is not an integer") from None


def _int_list(text: str, what: str) -> list[int]:
    return [_int(x, what) for x in text.split(",") if x.strip()]


def parse_bindings(items: list[str] | None) -> dict[str, list[int]]:
    """``a=3``, ``a=1..5`` (inclusive) or ``c=1,4,9`` into value lists."""
    out: dict[str, list[int]] = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ScenarioError(f"parameter binding {item!r} is not of the form name=value")
        if ".." in val:
            lo, _, hi = val.partition("..")
            out[key] = list(range(_int(lo, key), _int(hi, key) + 1))
        else:
            out[key] = _int_list(val, key)
        if not out[key] and ".." not in val:
            raise ScenarioError(f"parameter {key} has no value")
    return out


def parse_single_bindings(items: list[str] | None) -> dict[str, int]:
    multi = parse_bindings(items)
    bad = [k for k, v in multi.items() if len(v) != 1]
    if bad:
        raise ScenarioError(f"verify takes a single value per parameter: {', '.join(bad)}")
    return {k: v[0] for k, v in multi.items()}


def parse_checks(items: list[str] | None) -> list[str] | None:
    if not items:
        return None
    return [c for item in items for c in item.split(",") if c]


def parse_center_override(text: str) -> tuple[int, int, list[int]]:
    """``SIDE:INDEX=x,y,z``; INDEX counts centers after expanding repeats, negatives from the end."""
    lhs, sep, rhs = text.partition("=")
    side, sep2, index = lhs.partition(":")
    if not sep or not sep2:
        raise ScenarioError(f"center override {text!r} is not of the form SIDE:INDEX=x,y,z")
    return _int(side, "side"), _int(index, "index"), _int_list(rhs, "center")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    scenario = load_scenario(args.source, parse_single_bindings(args.param))
    for spec in args.center or ():
        side, index, coords = parse_center_override(spec)
        scenario = override_center(scenario, side, index, coords)
    report = run(scenario, parse_checks(args.checks))
    text = report.to_json() if args.format == "json" else render_text(report.to_dict())
    _emit(text, args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    bindings = parse_bindings(args.param)
    keys = sorted(bindings)
    combos = [dict(zip(keys, vals)) for vals in itertools.product(*(bindings[k] for k in keys))]
    if any(not v for v in bindings.values()):
        combos = []
    result = sweep(args.preset, combos, parse_checks(args.checks), workers=args.workers)
    text = canonical_json(result.to_dict()) if args.format == "json" else render_sweep_text(result)
    _emit(text, args.output)
    if any(i.error and "ConeTooLarge" in i.error for i in result.items):
        return EXIT_RESOURCE
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_report(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ScenarioError(f"cannot read report {args.file}: {e}") from e
    if "summary" in data:  # a saved sweep
        if args.format == "json":
            _emit(canonical_json(data), args.output)
        else:
            rows = [f"{r['parameters']}: {r['status']}" for r in data["summary"]]
            _emit("\n".join([f"sweep {data['preset']}: {data['status']}"] + rows) + "\n", args.output)
        return EXIT_OK if data["status"] == "pass" else EXIT_FAIL
    try:
        report = Report.from_dict(data)
    except TypeError as e:
        raise ScenarioError(f"{args.file} is not a report: {e}") from e
    _emit(report.to_json() if args.format == "json" else render_text(report.to_dict()), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_certify_ample(args) -> int:
    if args.lattice == "oguiso":
        if args.a is None or args.k is None:
            raise ScenarioError("--lattice oguiso needs --a and --k")
        try:
            cert = oguiso_ample_certificate(args.a, args.k, args.zbound)
        except ValueError as e:
            raise ScenarioError(str(e)) from e
    else:
        if not args.cls:
            raise ScenarioError("--lattice wehler needs --class x,y,z")
        coords = _int_list(args.cls, "class")
        if len(coords) != 3:
            raise ScenarioError("a Wehler class has three coordinates")
        cert = wehler_is_ample(wehler_lattice()(coords))
    d = cert.as_dict()
    if args.format == "json":
        _emit(canonical_json(d), args.output)
    else:
        lines = [f"class {d['class']} on {d['lattice']} ({d['method']})"]
        lines += [f"  {'ok ' if c['satisfied'] else 'BAD'} {c['description']}: {c['value']}" for c in d["checks"]]
        lines.append("ample: " + ("certified" if d["ample"] else "NOT certified"))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if cert.ample else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyglue", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    checks_help = f"comma-separated subset of {','.join(STAGES)} (default: all)"

    v = sub.add_parser("verify", help="run one preset or scenario file")
    v.add_argument("source", help=f"preset ({', '.join(PRESETS)}) or a JSON/YAML scenario file")
    v.add_argument("--param", nargs="+", metavar="NAME=N", help="parameter bindings, e.g. a=1 c=5")
    v.add_argument("--checks", nargs="+", help=checks_help)
    v.add_argument("--center", action="append", metavar="SIDE:INDEX=x,y,z",
                   help="replace a blow-up center, e.g. 1:-1=20,-4,12 (repeatable)")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--output", "-o", help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a preset over parameter ranges")
    s.add_argument("preset", choices=sorted(PRESETS))
    s.add_argument("--param", nargs="+", metavar="NAME=RANGE", help="e.g. a=1..50 or c=1,3,5")
    s.add_argument("--checks", nargs="+", help=checks_help)
    s.add_argument("--workers", type=int, default=min(4, os.cpu_count() or 1),
                   help="parallel worker processes (default: up to 4)")
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("report", help="re-render a saved JSON report")
    r.add_argument("file")
    r.add_argument("--format", choices=("json", "text"), default="text")
    r.add_argument("--output", "-o")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("certify-ample", help="issue an ampleness certificate")
    c.add_argument("--lattice", choices=("oguiso", "wehler"), default="oguiso")
    c.add_argument("--a", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--zbound", type=int, default=50)
    c.add_argument("--class", dest="cls", metavar="x,y,z", help="class to test on the Wehler lattice")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_certify_ample)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConeTooLarge as e:
        print(f"resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except StageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
