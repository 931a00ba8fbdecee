"""Command line interface: ``ratsub decide | reduce | verify | corpus``.

Exit codes: 0 member / agreement, 1 non-member (decide), 2 input error,
3 discrepancy between the reduction pipeline and the decider.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .automata import AutomatonError, Nfa, load_automaton
from .corpus import generate_corpus
from .deciders import h_rational_member
from .group_core import GroupError, HElement, InstanceGroup, load_group, parse_element
from .hnn import format_hnn
from .oracles import enumerate_image, submonoid_bfs
from .reduction import (
    CertificateError,
    chain_bound,
    certificate_for_witness,
    lemma_main_reduce,
    rational_member_via_admissible,
    verify_certificate,
)

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_INPUT = 2
EXIT_DISCREPANCY = 3


def verify_instance(
    g: InstanceGroup,
    a: Nfa,
    h: HElement,
    max_factors: int = 8,
    max_syllables: int | None = None,
    max_len: int = 0,
    inject_fault: bool = False,
) -> dict:
    """Run the admissible-subset pipeline and the decider on one instance.

    ``max_syllables=None`` prunes at the chain bound of each reduced automaton.
    With ``inject_fault`` the oracle is handed a delta that also contains the
    target itself, which any honest check must flag.
    """
    decided = h_rational_member(g, a, h)
    problems: list[str] = []

    def oracle(r):
        cap = chain_bound(r) if max_syllables is None else max_syllables
        delta = r.delta + (r.g,) if inject_fault else r.delta
        return submonoid_bfs(g, delta, r.g, max_factors, cap)

    verdict = rational_member_via_admissible(g, a, h, oracle=oracle)
    per_P = []
    for v in verdict.per_P:
        cert = v.certificate
        if cert is not None and not verify_certificate(g, v.reduction, cert):
            problems.append(f"certificate for P={list(v.P)} does not verify")
        per_P.append(
            {
                "P": list(v.P),
                "delta_size": len(v.reduction.delta),
                "oracle": v.search.outcome,
                "certificate": list(cert.factors) if cert is not None else None,
                "bound": v.search.max_factors,
                "max_syllables": v.search.max_syllables,
                "explored": v.search.explored,
            }
        )
    if verdict.member and not decided:
        problems.append("pipeline found a certificate for a non-member")

    constructive = None
    if decided:
        try:
            P, r, cert = certificate_for_witness(g, a, h, decided)
            constructive = {"P": list(P), "certificate": list(cert.factors)}
        except CertificateError as exc:
            problems.append(f"constructive certificate failed: {exc}")

    record = {
        "h": g.format(h),
        "answer_decider": bool(decided),
        "witness": " ".join(decided.word) if decided else None,
        "per_P": per_P,
        "aggregate": verdict.aggregate,
        "constructive": constructive,
    }
    if max_len > 0:
        seen = h in enumerate_image(g, a, max_len)
        record["answer_enumeration"] = seen
        if seen and not decided:
            problems.append(f"enumeration to length {max_len} finds h but the decider does not")

    if problems:
        status = "discrepancy"
    elif decided and not verdict.member:
        status = "inconclusive"
    else:
        status = "consistent"
    record["status"] = status
    record["problems"] = problems
    return record


def _load(args) -> tuple[InstanceGroup, Nfa, HElement]:
    g = load_group(args.group)
    a = load_automaton(g, args.automaton)
    h = parse_element(g, args.element)
    return g, a, h


def _emit(report: dict, out: str | None) -> None:
    if out:
        Path(out).write_text(json.dumps(report, indent=2) + "\n")


def cmd_decide(args) -> int:
    g, a, h = _load(args)
    result = h_rational_member(g, a, h)
    report = {
        "h": g.format(h),
        "member": bool(result),
        "witness": " ".join(result.word) if result else None,
    }
    if result:
        print(f"member: {report['h']}  witness: {report['witness'] or '(empty word)'}")
    else:
        print(f"not a member: {report['h']}")
    _emit(report, args.out)
    return EXIT_MEMBER if result else EXIT_NON_MEMBER


def cmd_reduce(args) -> int:
    g, a, h = _load(args)
    r = lemma_main_reduce(g, a, h)
    added = r.qf if len(a.finals) > 1 else None
    report = {
        "h": g.format(h),
        "automaton": r.automaton.to_dict(),
        "added_final_state": added,
        "q0": r.q0,
        "qf": r.qf,
        "delta": [
            {"index": i, "transition": list(t), "element": format_hnn(g, d)}
            for i, (t, d) in enumerate(zip(r.transitions, r.delta))
        ],
        "g": format_hnn(g, r.g),
    }
    if added is not None:
        print(f"added final state {added} with eps-transitions from {sorted(a.finals)}")
    print(f"delta ({len(r.delta)} elements):")
    for entry in report["delta"]:
        p, label, q = entry["transition"]
        print(f"  [{entry['index']}] ({p}, {label}, {q}) -> {entry['element']}")
    print(f"g = {report['g']}")
    _emit(report, args.out)
    return 0


def cmd_verify(args) -> int:
    g, a, h = _load(args)
    record = verify_instance(
        g, a, h, args.max_factors, args.max_syllables, args.max_len, args.inject_fault
    )
    print(f"h = {record['h']}  decider: {'member' if record['answer_decider'] else 'non-member'}")
    for row in record["per_P"]:
        cert = row["certificate"]
        print(f"  P={row['P']}  |delta|={row['delta_size']}  {row['oracle']}"
              + (f"  certificate={cert}" if cert is not None else ""))
    label = record["status"]
    if label == "consistent" and not record["answer_decider"]:
        label = "consistent (no-within-bound)"
    print(label)
    for problem in record["problems"]:
        print(f"  ! {problem}")
    _emit(record, args.out)
    return EXIT_DISCREPANCY if record["status"] == "discrepancy" else 0


def cmd_corpus(args) -> int:
    instances = generate_corpus(args.seed, args.count)
    rows = []
    counts = {"consistent": 0, "inconclusive": 0, "discrepancy": 0}
    members = 0
    for inst in instances:
        rec = verify_instance(
            inst.group, inst.automaton, inst.h, args.max_factors, args.max_syllables,
            args.max_len, args.inject_fault,
        )
        counts[rec["status"]] += 1
        members += rec["answer_decider"]
        rows.append(
            {"index": inst.index, "group": inst.group_name,
             "automaton": inst.automaton.to_dict(), "element": inst.element, **rec}
        )
    report = {
        "seed": args.seed,
        "instances": len(instances),
        "members": members,
        "non_members": len(instances) - members,
        **counts,
        "max_factors": args.max_factors,
        "records": rows,
    }
    print(
        f"seed {args.seed}: {len(instances)} instances, {members} members, "
        f"{counts['consistent']} consistent, {counts['inconclusive']} inconclusive, "
        f"{counts['discrepancy']} discrepancies"
    )
    _emit(report, args.out)
    return EXIT_DISCREPANCY if counts["discrepancy"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def nonneg(text: str) -> int:
        value = int(text)
        if value < 0:
            raise argparse.ArgumentTypeError("must be >= 0")
        return value

    def common(p, instance: bool = True) -> None:
        if instance:
            p.add_argument("--group", required=True, help="group file (JSON)")
            p.add_argument("--automaton", required=True, help="automaton file (JSON)")
            p.add_argument("--element", required=True, help='element literal, e.g. "x a1"')
        p.add_argument("--out", help="write the JSON report here")

    def bounds(p) -> None:
        p.add_argument("--max-factors", type=nonneg, default=8)
        p.add_argument("--max-syllables", type=nonneg, default=None,
                       help="t-length cap for BFS (default: chain bound of each automaton)")
        p.add_argument("--max-len", type=nonneg, default=6,
                       help="word length for the enumeration cross-check (0 disables)")
        p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("decide", help="decide h in pi(L(A))")
    common(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("reduce", help="print the generators and target of the reduction")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="compare the reduction pipeline with the decider")
    common(p)
    bounds(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="run verify over a seeded random corpus")
    common(p, instance=False)
    bounds(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=nonneg, default=240)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except (GroupError, AutomatonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
