"""Command line driver.

Every session command takes a session file as its positional argument;
repcheck runs standalone. --json swaps the human-oriented text for the
stable JSON document that run() produces; it is accepted both before
and after the subcommand name. The exit code is 0 exactly when nothing
errored and, for repcheck, no violations were found.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import AnalogiaError
from .session import parse_session, run

_TEXT_VIOLATION_CAP = 5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analogia",
        description="Classify, rank, and query analogies between finite domains.",
    )
    parser.add_argument(
        "--json", action="store_true", help="emit JSON instead of text"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    session_commands = (
        ("check", "parse and validate a session file"),
        ("classify", "partition the working set by support for each analogy"),
        ("report", "like classify, with image pairs and split negatives"),
        ("best", "show the preference relation and its undominated analogies"),
        ("entail", "answer the session's queries skeptically"),
        ("score", "straight-rule support score for each analogy"),
    )
    for name, help_text in session_commands:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="session file")
        sp.add_argument(
            "--json", action="store_true", default=argparse.SUPPRESS,
            help="emit JSON instead of text",
        )
    rp = sub.add_parser(
        "repcheck", help="exhaustively verify the relation/choice correspondences"
    )
    rp.add_argument("--n", type=int, required=True, help="carrier size")
    rp.add_argument(
        "--class", dest="relation_class", choices=["all", "smooth", "ranked"],
        default="all", help="relation class to sweep (default all)",
    )
    rp.add_argument(
        "--mode", choices=["soundness", "completeness"], default="soundness",
        help="sweep direction (default soundness)",
    )
    rp.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="emit JSON instead of text",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    json_mode = bool(getattr(args, "json", False))
    try:
        if args.command == "repcheck":
            result = run(
                None,
                "repcheck",
                n=args.n,
                relation_class=args.relation_class,
                mode=args.mode,
            )
        else:
            try:
                with open(args.file, encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as err:
                print(f"error: cannot read {args.file}: {err}", file=sys.stderr)
                return 1
            result = run(parse_session(text), args.command)
    except AnalogiaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if json_mode:
        print(json.dumps(result, indent=2))
    else:
        for line in _render(result):
            print(line)
    return 1 if result.get("violation_count", 0) else 0


# ====================================================================
# Text rendering
# ====================================================================


def _render(result: dict) -> list[str]:
    return {
        "check": _render_check,
        "classify": _render_classify,
        "report": _render_report,
        "score": _render_score,
        "best": _render_best,
        "entail": _render_entail,
        "repcheck": _render_repcheck,
    }[result["command"]](result)


def _names(values: list) -> str:
    return ", ".join(values) if values else "(none)"


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def _render_check(r: dict) -> list[str]:
    return [
        "session ok",
        f"  domains: {_names(r['domains'])}",
        f"  source: {r['source']}",
        f"  target: {r['target']}",
        f"  analogies: {_names(r['analogies'])}",
        f"  working set: {_count(r['working_set'], 'sentence')}",
        f"  queries: {r['queries']}",
        f"  closure: {'on' if r['closure'] else 'off'}",
        f"  preference: {r['preference']}",
    ]


def _render_classify(r: dict) -> list[str]:
    lines: list[str] = []
    for rep in r["reports"]:
        lines.append(f"analogy {rep['analogy']}")
        lines.append(f"  positive: {_names(rep['positive'])}")
        lines.append(f"  negative: {_names(rep['negative'])}")
        opens = [f"{f} [{rep['conjectures'][f]}]" for f in rep["open"]]
        lines.append(f"  open: {_names(opens)}")
        lines.append(f"  not applicable: {_names(rep['not_applicable'])}")
        lines.append(f"  untranslatable: {_names(rep['untranslatable'])}")
    return lines


def _render_report(r: dict) -> list[str]:
    def pairs(entries: list) -> str:
        return _names([f"{e['source']} ~> {e['target']}" for e in entries])

    lines: list[str] = []
    for rep in r["reports"]:
        lines.append(f"analogy {rep['analogy']}")
        lines.append(f"  positive pairs: {pairs(rep['positive_pairs'])}")
        lines.append(f"  negative (source true): {pairs(rep['negative_source_true'])}")
        lines.append(
            f"  negative (source false): {pairs(rep['negative_source_false'])}"
        )
        plausible = [
            f"{e['source']} ~> {e['target']} [{e['conjecture']}]"
            for e in rep["plausible"]
        ]
        lines.append(f"  plausible: {_names(plausible)}")
    return lines


def _render_score(r: dict) -> list[str]:
    lines: list[str] = []
    for s in r["scores"]:
        p = s["p"] if s["p"] is not None else "undefined (no positive support)"
        lines.append(f"{s['analogy']}: n={s['n']} r={s['r']} s={s['s']} p={p}")
    return lines


def _render_best(r: dict) -> list[str]:
    lines = [f"carrier: {_names(r['carrier'])}"]
    if r["edges"]:
        lines.append("edges:")
        lines.extend(f"  {a} over {b}" for a, b in r["edges"])
    else:
        lines.append("edges: (none)")
    lines.append(f"best: {_names(r['best'])}")
    return lines


def _render_entail(r: dict) -> list[str]:
    lines: list[str] = []
    for v in r["verdicts"]:
        status = v["status"]
        if status == "settled_in_target":
            lines.append(f"{v['query']}: settled in target = {v['value']}")
        elif status == "entailed":
            lines.append(
                f"{v['query']}: entailed {v['value']} "
                f"[support: {_names(v['support'])}]"
            )
        elif status == "conflicted":
            votes = "; ".join(f"{n}: {val}" for n, val in v["suggestions"].items())
            lines.append(f"{v['query']}: conflicted [{votes}]")
        else:
            lines.append(f"{v['query']}: no support")
        for w in v["warnings"]:
            lines.append(f"  warning: {w}")
    if not lines:
        lines.append("no queries")
    return lines


def _render_set(names: list) -> str:
    return "{" + ", ".join(names) + "}"


def _render_violation(v: dict) -> str:
    if v.get("relation") is not None:
        subject = (
            "relation ["
            + ", ".join(f"{a}->{b}" for a, b in v["relation"])
            + "]"
        )
    else:
        subject = "choice " + "; ".join(
            f"{_render_set(k)}->{_render_set(val)}" for k, val in v["choice"]
        )
    if v["property"] is None:
        return f"no representing relation for {subject}"
    where = f"X={_render_set(v['X'])}"
    if v["Y"] is not None:
        where += f", Y={_render_set(v['Y'])}"
    return f"{v['property']} fails at {where} for {subject}"


def _render_repcheck(r: dict) -> list[str]:
    lines = [
        f"repcheck {r['mode']} class={r['class']} n={r['n']}",
        f"  examined: {r['examined']}",
        f"  considered: {r['considered']}",
        f"  violations: {r['violation_count']}",
    ]
    if r["stats"]:
        stats = ", ".join(f"{k}={v}" for k, v in r["stats"].items())
        lines.append(f"  stats: {stats}")
    for v in r["violations"][:_TEXT_VIOLATION_CAP]:
        lines.append(f"  violation: {_render_violation(v)}")
    hidden = r["violation_count"] - min(r["violation_count"], _TEXT_VIOLATION_CAP)
    if hidden:
        lines.append(f"  ... and {hidden} more")
    lines.append("result: ok" if r["ok"] else "result: violations found")
    return lines


if __name__ == "__main__":
    raise SystemExit(main())
