"""Command line interface.

Exit codes: 0 on success / full agreement, 1 when an equivalence check
fails, 2 on usage errors (argparse's convention).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import arrangements, diagrams, patterns
from .classify import (
    ALL_CONDITIONS,
    CONDITION_NAMES,
    classify,
    find_minimal_non_hultman,
    verify_equivalence,
    witness_table,
    witness_table_json,
)
from .groups import Element, context, coxeter_length, parse_element


def _ctx_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=("A", "B"), required=True)
    parser.add_argument("--rank", type=int, required=True)


def _parse_conditions(text: str) -> tuple[int, ...]:
    nums = tuple(sorted({int(part) for part in text.split(",")}))
    for n in nums:
        if n not in CONDITION_NAMES:
            raise argparse.ArgumentTypeError(f"unknown condition {n}")
    return nums


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hultman",
        description=(
            "Classify and exhaustively verify Hultman elements of the "
            "symmetric and hyperoctahedral groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="evaluate the five conditions on one element")
    _ctx_args(p)
    p.add_argument("--element", required=True, help="one-line text (a=10) or signed window")
    p.add_argument("--conditions", type=_parse_conditions, default=ALL_CONDITIONS)
    p.add_argument("--explain", action="store_true", help="print supporting data")
    p.add_argument("--hull-budget", type=int, default=diagrams.DEFAULT_NODE_BUDGET)
    p.add_argument("--json", metavar="PATH", help="write the report as JSON")

    p = sub.add_parser("verify", help="check the equivalence over a whole group")
    _ctx_args(p)
    p.add_argument("--conditions", type=_parse_conditions, default=ALL_CONDITIONS)
    p.add_argument(
        "--sample-hull",
        type=int,
        metavar="K",
        help="sample K hull windows per element instead of exhaustive enumeration",
    )
    p.add_argument("--hull-budget", type=int, default=diagrams.DEFAULT_NODE_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH", help="write per-element reports as JSON")

    p = sub.add_parser(
        "minimal-patterns",
        help="recompute the BP-containment-minimal non-Hultman elements",
    )
    p.add_argument("--max-a", type=int, default=6)
    p.add_argument("--max-b", type=int, default=5)
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser(
        "witnesses", help="recompute the distance-witness table and diff it"
    )
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("chambers", help="inversion arrangement data for one element")
    _ctx_args(p)
    p.add_argument("--element", required=True)

    p = sub.add_parser("patterns", help="BP containment of one pattern in one host")
    p.add_argument("--host", required=True, help="host element text")
    p.add_argument("--host-family", choices=("A", "B"), default="B")
    p.add_argument("--pattern", required=True, help="pattern element text")
    p.add_argument("--family", choices=("A", "B"), required=True,
                   help="family the pattern lives in")
    return parser


def _element_from_args(args: argparse.Namespace) -> Element:
    return parse_element(args.element, context(args.family, args.rank))


def _cmd_classify(args: argparse.Namespace) -> int:
    w = _element_from_args(args)
    report = classify(w, args.conditions, hull_node_budget=args.hull_budget)
    print(f"element {w} in {w.ctx.family}_{w.ctx.rank} (length {coxeter_length(w)})")
    for name, value in report.conditions.items():
        shown = "inconclusive" if value is None else value
        print(f"  {name}: {shown}")
    if report.c is not None:
        print(f"  c(w) = {report.c}, s(w) = {report.s}")
    if args.explain:
        print(f"  E(w)  = {[(b.p, b.q, b.r) for b in diagrams.coessential_set(w)]}")
        if w.ctx.family == "B":
            eprime = diagrams.reduced_coessential(w)
            print(f"  E'(w) = {[(b.p, b.q, b.r) for b in eprime]}")
        if report.violations:
            print(f"  violated boxes: {[(b.p, b.q, b.r) for b in report.violations]}")
        if report.distance_witness:
            u, ld, lt = report.distance_witness
            print(f"  distance witness: u = {u}, l_D = {ld}, l_T = {lt}")
        if report.hull_counterexample:
            from .groups import format_window

            print(f"  hull counterexample: {format_window(report.hull_counterexample)}")
        if report.matched_pattern:
            v, emb = report.matched_pattern
            print(
                f"  matched pattern: {v} in {v.ctx.family}_{v.ctx.rank}"
                f" at positions {emb.indices}"
            )
        for note in report.notes:
            print(f"  note: {note}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json_dict(), fh, indent=2)
    if not report.consistent:
        print("CONDITION DISAGREEMENT", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    ctx = context(args.family, args.rank)
    summary = verify_equivalence(
        ctx,
        args.conditions,
        hull_node_budget=args.hull_budget,
        hull_samples=args.sample_hull,
        seed=args.seed,
        keep_reports=bool(args.json),
    )
    names = ", ".join(CONDITION_NAMES[c] for c in summary.conditions)
    print(f"{ctx.family}_{ctx.rank}: {summary.total} elements, conditions [{names}]")
    print(f"  Hultman elements: {summary.hultman_count}")
    if summary.hull_inconclusive:
        print(f"  hull checks inconclusive: {summary.hull_inconclusive}")
    print(f"  elapsed: {summary.elapsed:.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(summary.to_json_dict(), fh, indent=2)
    if summary.disagreements:
        print(f"  DISAGREEMENTS: {len(summary.disagreements)}", file=sys.stderr)
        for r in summary.disagreements[:20]:
            print(f"    {r.element}: {r.conditions}", file=sys.stderr)
        return 1
    print("  all computed conditions agree")
    return 0


def _cmd_minimal_patterns(args: argparse.Namespace) -> int:
    found = find_minimal_non_hultman(args.max_a, args.max_b)
    expected = {
        (v.ctx.family, v.ctx.rank, v.window) for v in patterns.condition5_patterns()
        if (v.ctx.family == "A" and v.ctx.rank <= args.max_a)
        or (v.ctx.family == "B" and v.ctx.rank <= args.max_b)
    }
    got = {(v.ctx.family, v.ctx.rank, v.window) for v in found}
    for v in found:
        print(f"{v.ctx.family}_{v.ctx.rank}: {v}")
    print(f"total: {len(found)}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(
                [
                    {"family": v.ctx.family, "rank": v.ctx.rank, "element": str(v)}
                    for v in found
                ],
                fh,
                indent=2,
            )
    if got != expected:
        missing = expected - got
        extra = got - expected
        if missing:
            print(f"MISSING from listed patterns: {sorted(missing)}", file=sys.stderr)
        if extra:
            print(f"NOT in listed patterns: {sorted(extra)}", file=sys.stderr)
        return 1
    print("matches the listed pattern set exactly")
    return 0


def _cmd_witnesses(args: argparse.Namespace) -> int:
    reports = witness_table()
    for rep in reports:
        w = rep.pattern
        status = "non-Hultman confirmed" if rep.non_hultman_confirmed else "HULTMAN?"
        print(f"{w.ctx.family}_{w.ctx.rank} {w}: {status}, "
              f"{len(rep.witnesses)} witnesses")
        for comp in rep.row_comparisons:
            if comp.matches:
                print(f"  row u={comp.u} ({comp.listed[0]},{comp.listed[1]}): match")
            else:
                tag = "parity-inconsistent" if not comp.parity_consistent else "mismatch"
                print(
                    f"  row u={comp.u} listed ({comp.listed[0]},{comp.listed[1]})"
                    f": {tag}; recomputed "
                    + (
                        f"({comp.recomputed[0]},{comp.recomputed[1]})"
                        f"{'' if comp.is_witness else ' (not a witness)'}"
                        if comp.recomputed
                        else "u is not below w"
                    )
                )
        for u, ld, lt in rep.extra_witnesses:
            print(f"  unlisted witness u={u}: ({ld},{lt})")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(witness_table_json(reports))
    return 0


def _cmd_chambers(args: argparse.Namespace) -> int:
    w = _element_from_args(args)
    refl = arrangements.inversion_reflections(w)
    planes = arrangements.inversion_arrangement(w)
    poset = arrangements.intersection_poset(planes, w.ctx.rank)
    chi = poset.characteristic_polynomial()
    print(f"element {w}: |Inv(w)| = {len(refl)} (length {coxeter_length(w)})")
    print("hyperplanes: " + (", ".join(str(h) for h in planes) or "(none)"))
    terms = [
        f"{c:+d}t^{d}" for d, c in reversed(list(enumerate(chi))) if c
    ]
    print("characteristic polynomial: " + " ".join(terms))
    print(f"c(w) = {poset.region_count}")
    return 0


def _cmd_patterns(args: argparse.Namespace) -> int:
    host_text = args.host
    host_rank = len(host_text) if args.host_family == "A" else len(host_text) // 2
    w = parse_element(host_text, context(args.host_family, host_rank))
    pat_rank = len(args.pattern) if args.family == "A" else len(args.pattern) // 2
    v = parse_element(args.pattern, context(args.family, pat_rank))
    emb = patterns.bp_contains(w, v)
    if emb is None:
        print(f"{w} BP avoids {v} in {v.ctx.family}_{v.ctx.rank}")
    else:
        print(
            f"{w} BP contains {v} in {v.ctx.family}_{v.ctx.rank} "
            f"at positions {emb.indices}"
        )
        print(f"flattening: {patterns.flatten(w, emb)}")
    return 0


COMMANDS = {
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "minimal-patterns": _cmd_minimal_patterns,
    "witnesses": _cmd_witnesses,
    "chambers": _cmd_chambers,
    "patterns": _cmd_patterns,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
