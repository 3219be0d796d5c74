"""Command-line front end.

Verbs: check (run the generic pipeline on a scenario file), reproduce (named
corpus example with its pinned expectations), eval (value of an element),
gamma (value-groupoid summary), list (corpus inventory).  Exit codes: 0 all
executed checks pass, 2 some check failed, 3 the scenario failed to load.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import REPRODUCE, Report, reproduce, run_checks
from .errors import GradvalError, ParseError, UnknownExample, ValidationError
from .omega import ValueGroupoid
from .patterns import is_valuation_ring, value_window
from .scenario import corpus_names, load_corpus_scenario, load_scenario
from .valuation import CanonicalValuation
from .algebra import parse_element, render_element

EXIT_CHECK_FAILED = 2
EXIT_LOAD_ERROR = 3


def _radius(args) -> int:
    if args.slow or os.environ.get("GRADVAL_SLOW") == "1":
        return max(args.window, 10)
    return args.window


def _load(path_or_name: str):
    if path_or_name.endswith(".toml") or os.path.sep in path_or_name:
        return load_scenario(path_or_name)
    return load_corpus_scenario(path_or_name)


def _emit(report: Report, args) -> int:
    if args.report == "json":
        print(json.dumps(report.to_dict(include_timing=args.timing), sort_keys=True, indent=2))
    else:
        print(report.to_text())
        if args.timing and report.elapsed is not None:
            print(f"  elapsed: {report.elapsed:.3f}s")
    return report.exit_code()


def cmd_check(args) -> int:
    scenario = _load(args.scenario)
    report = run_checks(scenario, seed=args.seed, radius=_radius(args))
    return _emit(report, args)


def cmd_reproduce(args) -> int:
    report = reproduce(args.name, seed=args.seed, radius=_radius(args))
    return _emit(report, args)


def cmd_eval(args) -> int:
    scenario = _load(args.scenario)
    if scenario.subring is None or not is_valuation_ring(scenario.subring):
        print("eval needs a scenario with a total stable subring", file=sys.stderr)
        return EXIT_LOAD_ERROR
    val = CanonicalValuation(scenario.subring)
    if args.element in scenario.elements:
        x = scenario.elements[args.element]
    else:
        x = parse_element(scenario.ring, args.element)
    value = val.value(x)
    print(f"x = {render_element(x)}")
    print(f"v(x) = {value.render()}")
    return 0


def cmd_gamma(args) -> int:
    scenario = _load(args.scenario)
    if scenario.subring is None or not is_valuation_ring(scenario.subring):
        print("gamma needs a scenario with a total stable subring", file=sys.stderr)
        return EXIT_LOAD_ERROR
    omega = ValueGroupoid(scenario.subring)
    gpd = omega.ring.groupoid
    print(f"scenario {scenario.id}")
    print(f"unit components: {', '.join(omega.unit_component_names()) or '(none)'}")
    idem = omega.idempotent_classes()
    print(f"idempotent classes ({len(idem)}): " + ", ".join(c.render() for c in idem))
    print(f"value structure is a group: {omega.is_group()}")
    print("cofinality classes:")
    for label, members in sorted(omega.gbar_classes().items()):
        print(f"  {label}: {{{', '.join(members)}}}")
    labels = sorted(omega.gbar_classes())
    relations = [
        f"{a} < {b}" for a in labels for b in labels if omega.gbar_lt(a, b)
    ]
    print("class order: " + ("; ".join(relations) if relations else "(discrete)"))
    window = value_window(omega.ring, 1)
    sample = sorted(
        {omega.canon(g, m) for g in gpd.elements() for m in window},
        key=omega.sort_key,
    )
    print("classes near the units: " + ", ".join(c.render() for c in sample))
    return 0


def cmd_list(args) -> int:
    for name in corpus_names():
        scenario = load_corpus_scenario(name)
        marker = "*" if name in REPRODUCE else " "
        print(f"{marker} {name:22} {scenario.title}")
    print("(* has pinned reproduction checks)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradval",
        description="exact checks for groupoid-graded skewfields and their valuation rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_arg=True):
        if scenario_arg:
            p.add_argument("scenario", help="scenario file path or corpus name")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--window", type=int, default=6, help="value window radius")
        p.add_argument("--report", choices=["text", "json"], default="text")
        p.add_argument("--slow", action="store_true", help="widen the window to 10")
        p.add_argument("--timing", action="store_true", help="include timing in output")

    p_check = sub.add_parser("check", help="run the generic pipeline on a scenario")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_rep = sub.add_parser("reproduce", help="run a corpus example's pinned checks")
    p_rep.add_argument("name", help="example name (see: gradval list)")
    common(p_rep, scenario_arg=False)
    p_rep.set_defaults(func=cmd_reproduce)

    p_eval = sub.add_parser("eval", help="print the value of an element")
    p_eval.add_argument("scenario")
    p_eval.add_argument("element", help="element string or a name from [elements]")
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--window", type=int, default=6)
    p_eval.add_argument("--report", choices=["text", "json"], default="text")
    p_eval.add_argument("--slow", action="store_true")
    p_eval.add_argument("--timing", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_gamma = sub.add_parser("gamma", help="summarise the value groupoid")
    p_gamma.add_argument("scenario")
    p_gamma.add_argument("--seed", type=int, default=0)
    p_gamma.add_argument("--window", type=int, default=6)
    p_gamma.add_argument("--report", choices=["text", "json"], default="text")
    p_gamma.add_argument("--slow", action="store_true")
    p_gamma.add_argument("--timing", action="store_true")
    p_gamma.set_defaults(func=cmd_gamma)

    p_list = sub.add_parser("list", help="list the scenario corpus")
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, UnknownExample) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    except GradvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
