"""Command-line surface.

Exit codes: 0 for success / positive answers, 1 for negative answers
(not equivalent, violations found, trace fails to replay), 2 for
errors (bad input, I/O, orbit budget).  Single-code commands read
newline-delimited codes from stdin when no code argument is given.
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import FormatVersionMismatch, classify, record_line, write_catalog
from .compose import is_composite, permutant_set, verify_superadditivity
from .diagram import (
    BasedDiagram,
    GaussCodeError,
    canonical_form,
    find_splits,
    parse,
    serialize,
)
from .compose import connected_sum
from .invariants import u_polynomial
from .moves import SiteMismatch
from .reduce import (
    MoveTrace,
    OrbitBudgetExceeded,
    OrbitLimits,
    TraceMismatch,
    equivalent,
    monotone_reduce,
    replay_trace,
)


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _input_codes(args) -> list[str]:
    if args.codes:
        return list(args.codes)
    return [line.strip() for line in sys.stdin if line.strip()]


def _limits(args) -> OrbitLimits:
    return OrbitLimits(max_nodes=args.max_orbit)


def _cmd_canon(args) -> int:
    for code in _input_codes(args):
        canon = canonical_form(parse(code))
        if args.format == "json":
            _emit_json({"canonical": canon, "input": code})
        else:
            print(canon)
    return 0


def _cmd_reduce(args) -> int:
    codes = _input_codes(args)
    if args.trace and len(codes) != 1:
        raise ValueError("--trace needs exactly one input code")
    limits = _limits(args)
    for code in codes:
        minimal, trace = monotone_reduce(parse(code), limits)
        if args.trace:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(trace.to_json() + "\n")
        if args.format == "json":
            _emit_json(
                {
                    "cr": minimal.n,
                    "input": code,
                    "minimal": serialize(minimal),
                    "steps": len(trace.steps),
                    "u": str(u_polynomial(minimal)),
                }
            )
        else:
            print(f"{serialize(minimal)} cr={minimal.n}")
    return 0


def _cmd_equiv(args) -> int:
    d1, d2 = parse(args.code1), parse(args.code2)
    limits = _limits(args)
    if args.trace:
        same, cert = equivalent(d1, d2, limits, with_certificate=True)
        if same and cert is not None:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(cert.to_json() + "\n")
    else:
        same = equivalent(d1, d2, limits)
    if args.format == "json":
        _emit_json({"equivalent": same, "inputs": [args.code1, args.code2]})
    else:
        print("equivalent" if same else "not-equivalent")
    return 0 if same else 1


def _cmd_prime(args) -> int:
    limits = _limits(args)
    for code in _input_codes(args):
        v = is_composite(parse(code), limits)
        min_code = serialize(v.minimal)
        splits = find_splits(v.minimal, include_degenerate=True) if args.all_splits else None
        if args.format == "json":
            obj = {
                "cr": v.minimal.n,
                "input": code,
                "minimal": min_code,
                "verdict": v.verdict,
                "witness": None
                if v.witness is None
                else {
                    "gap_a": v.witness.gap_a,
                    "gap_b": v.witness.gap_b,
                    "sides": list(v.witness.side_sizes),
                },
            }
            if splits is not None:
                obj["splits"] = [
                    {"gap_a": s.gap_a, "gap_b": s.gap_b, "sides": list(s.side_sizes)}
                    for s in splits
                ]
            _emit_json(obj)
        else:
            line = f"{v.verdict} minimal={min_code} cr={v.minimal.n}"
            if v.witness is not None:
                w = v.witness
                line += f" split=({w.gap_a},{w.gap_b}) sides={w.side_sizes[0]},{w.side_sizes[1]}"
            print(line)
            if splits is not None:
                for s in splits:
                    print(f"split gap_a={s.gap_a} gap_b={s.gap_b} sides={s.side_sizes[0]},{s.side_sizes[1]}")
    return 0


def _cmd_csum(args) -> int:
    s = connected_sum(
        BasedDiagram(parse(args.code1), args.gap1),
        BasedDiagram(parse(args.code2), args.gap2),
    )
    if args.format == "json":
        _emit_json({"code": serialize(s), "canonical": canonical_form(s)})
    else:
        print(serialize(s))
    return 0


def _cmd_permutants(args) -> int:
    ps = permutant_set(parse(args.code1), parse(args.code2))
    if args.format == "json":
        _emit_json(
            {
                "inputs": list(ps.input_codes),
                "members": list(ps.members),
                "sources": {c: [list(p) for p in pairs] for c, pairs in ps.sources.items()},
            }
        )
    else:
        print(f"members={len(ps.members)}")
        for code in ps.members:
            src = ";".join(f"{g1},{g2}" for g1, g2 in ps.sources[code])
            print(f"{code} from={src}")
    return 0


def _cmd_verify_superadd(args) -> int:
    report = verify_superadditivity(
        parse(args.code1),
        parse(args.code2),
        _limits(args),
        seed=args.seed,
        sample_size=args.sample_size,
    )
    if args.format == "json":
        _emit_json(
            {
                "cr1": report.cr1,
                "cr2": report.cr2,
                "distinct_classes": report.distinct_classes,
                "equality_violations": list(report.equality_violations),
                "exhaustive": report.exhaustive,
                "inequality_violations": list(report.inequality_violations),
                "inputs": list(report.input_codes),
                "inputs_minimal": report.inputs_minimal,
                "members": [
                    {"class": r.class_id, "code": r.code, "cr": r.cr, "minimal": r.minimal}
                    for r in report.rows
                ],
                "ok": report.ok,
            }
        )
    else:
        print(
            f"cr1={report.cr1} cr2={report.cr2} "
            f"inputs-minimal={str(report.inputs_minimal).lower()} "
            f"exhaustive={str(report.exhaustive).lower()}"
        )
        for r in report.rows:
            print(
                f"member code={r.code} cr={r.cr} class={r.class_id} "
                f"minimal={str(r.minimal).lower()}"
            )
        print(
            f"classes={report.distinct_classes} "
            f"inequality-violations={len(report.inequality_violations)} "
            f"equality-violations={len(report.equality_violations)}"
        )
    return 0 if report.ok else 1


def _cmd_tabulate(args) -> int:
    records = classify(args.n, _limits(args))
    if args.out:
        write_catalog(records, args.out, args.n)
    if args.format == "json":
        _emit_json(
            {
                "n": args.n,
                "quotient": "oriented",
                "records": [
                    {
                        "class": r.class_id,
                        "code": r.code,
                        "cr": r.cr,
                        "orbit": r.orbit_size,
                        "u": r.u_text,
                        "verdict": r.verdict,
                    }
                    for r in records
                ],
            }
        )
    else:
        print(f"flatcat v1 n={args.n} quotient=oriented")
        for r in records:
            print(record_line(r))
    return 0


def _cmd_replay(args) -> int:
    with open(args.tracefile, encoding="utf-8") as fh:
        trace = MoveTrace.from_json(fh.read())
    start = canonical_form(parse(args.code))
    if start != trace.start:
        print(f"trace starts at {trace.start!r}, not {start!r}", file=sys.stderr)
        return 1
    try:
        result = replay_trace(trace)
    except (SiteMismatch, TraceMismatch) as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        _emit_json({"end": serialize(result), "steps": len(trace.steps)})
    else:
        print(serialize(result))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default=argparse.SUPPRESS
    )
    common.add_argument("--max-orbit", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="flatknots",
        description="Flat virtual knots as Gauss diagrams: canonical forms, "
        "reduction, equivalence, primality, connected sums, tabulation.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", parents=[common], help="canonical code")
    p.add_argument("codes", nargs="*")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("reduce", parents=[common], help="minimal diagram and crossing number")
    p.add_argument("codes", nargs="*")
    p.add_argument("--trace", metavar="FILE")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("equiv", parents=[common], help="decide flat equivalence")
    p.add_argument("code1")
    p.add_argument("code2")
    p.add_argument("--trace", metavar="FILE")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("prime", parents=[common], help="trivial / prime / composite verdict")
    p.add_argument("codes", nargs="*")
    p.add_argument("--all-splits", action="store_true")
    p.set_defaults(func=_cmd_prime)

    p = sub.add_parser("csum", parents=[common], help="connected sum at basepoint gaps")
    p.add_argument("code1")
    p.add_argument("gap1", type=int)
    p.add_argument("code2")
    p.add_argument("gap2", type=int)
    p.set_defaults(func=_cmd_csum)

    p = sub.add_parser("permutants", parents=[common], help="all connected sums over basepoints")
    p.add_argument("code1")
    p.add_argument("code2")
    p.set_defaults(func=_cmd_permutants)

    p = sub.add_parser(
        "verify-superadd", parents=[common], help="check crossing-number super-additivity"
    )
    p.add_argument("code1")
    p.add_argument("code2")
    p.add_argument("--sample-size", type=int, default=256)
    p.set_defaults(func=_cmd_verify_superadd)

    p = sub.add_parser("tabulate", parents=[common], help="classify all n-arrow diagrams")
    p.add_argument("n", type=int)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_tabulate)

    p = sub.add_parser("replay", parents=[common], help="replay and validate a trace file")
    p.add_argument("code")
    p.add_argument("tracefile")
    p.set_defaults(func=_cmd_replay)

    return parser


_GLOBAL_DEFAULTS = {"format": "text", "max_orbit": 1_000_000, "seed": 0}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # global flags are valid before or after the subcommand; both copies
    # default to SUPPRESS, so whichever was given wins and the fallback
    # lands here
    for dest, default in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, dest):
            setattr(args, dest, default)
    try:
        return args.func(args)
    except (
        GaussCodeError,
        SiteMismatch,
        TraceMismatch,
        OrbitBudgetExceeded,
        FormatVersionMismatch,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
