#!/usr/bin/env python3
"""Run every corpus scenario through the full pipeline and summarise.

Reproduction checks are used where pinned, the generic pipeline otherwise.
Exit code 0 only if every scenario comes back clean.

    python3 scripts/run_corpus.py [--seed N] [--window W] [--json]
"""

import argparse
import json
import sys

from gradval.checks import REPRODUCE, reproduce, run_checks
from gradval.scenario import corpus_names, load_corpus_scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--window", type=int, default=6)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    reports = []
    for name in corpus_names():
        if name in REPRODUCE:
            report = reproduce(name, seed=args.seed, radius=args.window)
        else:
            scenario = load_corpus_scenario(name)
            report = run_checks(scenario, seed=args.seed, radius=args.window)
        reports.append(report)

    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2))
    else:
        worst = 0
        for report in reports:
            counts = report.counts()
            verdict = "ok" if report.ok() else "FAILED"
            print(
                f"{report.scenario:22} {verdict:6} "
                f"({counts['pass']} pass, {counts['fail']} fail, "
                f"{counts['skipped']} skipped, {report.elapsed:.2f}s)"
            )
            if not report.ok():
                worst = 2
                for c in report.checks:
                    if c.status in ("fail", "error"):
                        print(f"    {c.name}: {c.witness or c.detail}")
        return worst
    return 0 if all(r.ok() for r in reports) else 2


if __name__ == "__main__":
    sys.exit(main())
