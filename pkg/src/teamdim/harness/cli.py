"""``teamdim`` command line."""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from ..dimension import compute_dimension
from ..errors import TeamDimError
from ..formula import parse
from ..semantics import equivalent, parse_team, satisfies, team_property
from ..setfam import family_from_json, parse_family
from ..transforms import RULES, rewrite
from .registry import DEFAULT_SAMPLES, DEFAULT_SEED, SUITES, run_suite


def _read_family(arg: str):
    text = arg
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    text = text.strip()
    if text.startswith("{"):
        return family_from_json(json.loads(text))
    return parse_family(text)


def cmd_dim(a) -> int:
    F = _read_family(a.family)
    print(compute_dimension(F, a.kind).dumps())
    return 0


def cmd_eval(a) -> int:
    ok = satisfies(parse_team(a.team), parse(a.formula))
    print(json.dumps({"satisfied": ok}))
    return 0


def cmd_property(a) -> int:
    P = team_property(parse(a.formula), [v for v in a.scope.split(",") if v])
    print(json.dumps(P.to_json()))
    return 0


def cmd_equiv(a) -> int:
    r = equivalent(parse(a.f), parse(a.g))
    out = {"equivalent": r.equivalent, "scope": list(r.scope.vars)}
    if r.counterexample is not None:
        out["counterexample"] = r.counterexample.to_literal()
        out["satisfied_by"] = r.satisfied_by
    print(json.dumps(out))
    return 0 if r.equivalent else 1


def cmd_reduce(a) -> int:
    _, steps = rewrite(parse(a.formula), a.rule, repeat=a.repeat)
    for s in steps:
        print(s.dumps())
    return 0


def cmd_verify(a) -> int:
    results = run_suite(a.suite, seed=a.seed, samples=a.samples, jobs=a.jobs)
    failed = 0
    tally = Counter()
    for cid, recs in results:
        for r in recs:
            tally[(cid, r.passed)] += 1
            failed += r.passed is False
            if a.json:
                print(r.dumps())
            elif a.verbose or r.passed is not True:
                print(r.line())
    if not a.json:
        for cid, _ in results:
            p, f, i = tally[(cid, True)], tally[(cid, False)], tally[(cid, None)]
            status = "FAIL" if f else "PASS"
            extra = f", {i} reported" if i else ""
            print(f"{status} {cid}: {p} passed, {f} failed{extra}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="teamdim", description="Team semantics and dimension toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dim", help="dimension of a set family")
    p.add_argument("--family", required=True, help="family literal, JSON, or a file holding either")
    p.add_argument("--kind", default="upper", choices=["upper", "dual", "cyl", "union", "inter"])
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("eval", help="does a team satisfy a formula")
    p.add_argument("--team", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("property", help="team property of a formula over a scope")
    p.add_argument("--formula", required=True)
    p.add_argument("--scope", required=True, help="comma separated variables")
    p.set_defaults(fn=cmd_property)

    p = sub.add_parser("equiv", help="exhaustive equivalence check")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("reduce", help="apply a rewrite rule, printing the trail as JSON lines")
    p.add_argument("--rule", required=True, choices=sorted(RULES))
    p.add_argument("--formula", required=True)
    p.add_argument("--repeat", action="store_true", help="rewrite until the rule no longer applies")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true", help="one JSON record per line")
    p.add_argument("-v", "--verbose", action="store_true", help="print passing records too")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.fn(a)
    except TeamDimError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
