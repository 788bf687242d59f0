"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when some check fails
(the report is still written), 2 for input, parse or selection errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .algebra import AlgebraError, parse_algebra
from .constructions import function_algebra, groupoid_algebra, set_action_module_algebra, trivial_module_algebra
from .duality import DualityError
from .fixtures import UnknownFixture, get_fixture, list_fixtures
from .groupoid import GroupoidParseError, parse, parse_action
from .report import Report
from .smash import ModuleAlgebra
from . import suites

VERBS = ("validate", "build", "axioms", "integrals", "dual", "smash", "duality", "report", "fixtures")


class InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgroupoid", description="Weak multiplier Hopf algebras from groupoids: build and verify.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--fixture", help="named fixture (see the 'fixtures' verb)")
    p.add_argument("--groupoid", metavar="FILE", help="groupoid file")
    p.add_argument("--action", metavar="FILE", help="groupoid action file (needs --groupoid)")
    p.add_argument("--algebra", metavar="FILE", help="algebra file (validate only)")
    p.add_argument("--construction", choices=("groupoid-algebra", "function-algebra"), default="groupoid-algebra",
                   help="structure built from --groupoid")
    p.add_argument("--integral", default=None, help="sum, unit-indicator, counting or an index")
    p.add_argument("--budget", type=int, default=200, help="sample budget for lazy checks")
    p.add_argument("--seed", type=int, default=0, help="seed for lazy checks")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--timings", action="store_true", help="include per-check timings")
    return p


def _parse_groupoid(path: str, strict: bool = True):
    g = parse(_read(path), strict=strict)
    return g if g.name else replace(g, name=Path(path).stem)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _source(args) -> tuple[str, object]:
    """Resolve the input into (description, structure or module algebra)."""
    given = [x for x in (args.fixture, args.groupoid, args.algebra) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --fixture, --groupoid or --algebra")
    if args.fixture:
        f = get_fixture(args.fixture)
        return f.name, f
    if args.algebra:
        raise InputError("--algebra is only accepted by the validate verb")
    g = _parse_groupoid(args.groupoid)
    build = groupoid_algebra if args.construction == "groupoid-algebra" else function_algebra
    w = build(g)
    if args.action:
        if args.construction != "groupoid-algebra":
            raise InputError("--action acts through the groupoid algebra")
        return args.groupoid, set_action_module_algebra(w, parse_action(_read(args.action), g))
    return args.groupoid, w


def _structure(obj):
    if hasattr(obj, "structure"):
        return obj.structure()
    return obj.A if isinstance(obj, ModuleAlgebra) else obj


def _module(obj) -> ModuleAlgebra:
    if hasattr(obj, "module"):
        return obj.module()
    return obj if isinstance(obj, ModuleAlgebra) else trivial_module_algebra(obj)


def _finite(w):
    if not w.finite:
        raise InputError(f"{w.name} is lazy; only the build and axioms verbs support it")
    return w


def _validate(args) -> list[Report]:
    if args.algebra:
        return [suites.algebra_report(parse_algebra(_read(args.algebra), Path(args.algebra).stem, check=False))]
    if args.groupoid:
        g = _parse_groupoid(args.groupoid, strict=False)
        out = [suites.groupoid_report(g)]
        if args.action:
            if not out[0].ok:
                raise InputError("cannot read an action over an invalid groupoid")
            out.append(suites.action_report(parse_action(_read(args.action), g)))
        return out
    _, f = _source(args)
    w = _structure(f)
    g = w.extras.get("groupoid")
    if g is None or not hasattr(g, "morphisms"):
        raise InputError("this fixture has no finite groupoid to validate")
    return [suites.groupoid_report(g)]


def run(argv: Sequence[str] | None = None) -> tuple[int, dict, str]:
    """Execute a command; returns (exit status, JSON document, text)."""
    args = build_parser().parse_args(argv)
    doc: dict = {"command": args.verb}
    if args.verb == "fixtures":
        listing = list_fixtures()
        doc["fixtures"] = listing
        text = "".join(f"{x['name']:<16} {x['kind']:<7} {x['description']}\n" for x in listing)
        return 0, doc, text
    v = args.verb
    if v == "validate":
        reports = _validate(args)
    else:
        name, obj = _source(args)
        doc["source"] = name
        w = _structure(obj)
        if v == "build":
            reports = [suites.build_summary(w)] if w.finite else [Report(f"build {w.name}", info={"finite": False})]
        elif v == "axioms":
            reports = suites.axiom_reports(w, budget=args.budget, seed=args.seed)
        elif v == "integrals":
            reports = [suites.integral_report(_finite(w), args.integral)]
        elif v == "dual":
            reports = suites.dual_reports(_finite(w), args.integral)
        elif v == "smash":
            _finite(w)
            reports = suites.smash_reports(_module(obj))
        elif v == "duality":
            _finite(w)
            reports = suites.duality_reports(_module(obj), args.integral)
            doc["duality"] = _duality_summary(reports[0])
        else:  # report
            _finite(w)
            m = _module(obj)
            reports = [suites.build_summary(w), *suites.axiom_reports(w), suites.integral_report(w, args.integral)]
            reports += suites.dual_reports(w, args.integral)
            reports += suites.smash_reports(m)
            dr = suites.duality_reports(m, args.integral)
            doc["duality"] = _duality_summary(dr[0])
            reports += dr
    ok = all(r.ok for r in reports)
    doc["ok"] = ok
    doc["reports"] = [r.to_json(args.timings) for r in reports]
    text = "".join(r.render_text(args.timings) for r in reports)
    return (0 if ok else 1), doc, text


def _duality_summary(rep: Report) -> dict:
    from .report import fmt

    keys = ("dim_bismash", "dim_rhs", "spans_equal", "iso_verified", "witnesses")
    return {k: fmt(rep.info.get(k)) for k in keys}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        status, doc, text = run(argv)
    except UnknownFixture as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, GroupoidParseError, AlgebraError, DualityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if ns.json:
        payload = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        if ns.json == "-":
            sys.stdout.write(payload)
        else:
            Path(ns.json).write_text(payload, encoding="utf-8")
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
