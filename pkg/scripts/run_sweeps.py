#!/usr/bin/env python3
"""Run the exhaustive relation/choice-function sweeps and summarize.

Soundness enumerates every irreflexive relation on small carriers and
checks that its induced choice function satisfies the laws tied to the
relation's class. Completeness enumerates every choice function and
asks whether the law-obeying ones are induced by some relation; this
direction has known failures (see the README), so the script's exit
code reports what it found rather than assuming green.
"""

import argparse
import json
import sys
import time

from analogia import RelationClass, completeness_sweep, soundness_sweep

CLASSES = {
    "all": RelationClass.ALL,
    "smooth": RelationClass.TRANSITIVE_SMOOTH,
    "ranked": RelationClass.RANKED,
}


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--max-n", type=int, default=3,
        help="largest carrier size to sweep (soundness caps at 4, "
        "completeness at 3; default 3)",
    )
    parser.add_argument(
        "--mode", choices=["soundness", "completeness", "both"],
        default="both", help="which sweep direction to run (default both)",
    )
    parser.add_argument(
        "--json", action="store_true",
        help="emit one JSON document per sweep instead of the table",
    )
    return parser.parse_args(argv)


def sweep_rows(mode, max_n):
    runner = soundness_sweep if mode == "soundness" else completeness_sweep
    cap = 4 if mode == "soundness" else 3
    for n in range(1, min(max_n, cap) + 1):
        for cls in CLASSES.values():
            started = time.perf_counter()
            result = runner(n, cls)
            yield result, time.perf_counter() - started


def main(argv=None):
    args = parse_args(argv)
    modes = (
        ["soundness", "completeness"] if args.mode == "both" else [args.mode]
    )
    bad = 0
    for mode in modes:
        if not args.json:
            print(f"== {mode} ==")
            print(
                f"{'n':>2} {'class':<8} {'examined':>9} {'considered':>10} "
                f"{'violations':>10} {'time':>8}"
            )
        for result, elapsed in sweep_rows(mode, args.max_n):
            bad += len(result.violations)
            if args.json:
                print(json.dumps(result.to_json_dict()))
            else:
                print(
                    f"{result.n:>2} {result.relation_class.value:<8} "
                    f"{result.examined:>9} {result.considered:>10} "
                    f"{len(result.violations):>10} {elapsed:>7.2f}s"
                )
        if not args.json:
            print()
    if bad and not args.json:
        print(f"total violations: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
