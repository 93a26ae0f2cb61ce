"""Command line: pack, opt, bounds, adversary, gen, bench.

Exit status is 1 when a correctness check fails (invalid packing, missed
guarantee, failed experiment row) and 2 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import adversary as adv
from .core import read_instance, validate_packing, write_instance
from .discrepancy import lb1, lb2
from .harness import emit_csv, generate, parse_spec, run_experiment
from .offline import (DEFAULT_LIMIT, InstanceTooLarge, SearchBudgetExceeded,
                      construct_lb2_packing, exact_opt)
from .online import ALGORITHMS, ceil_3_2, run_online


def _report_invalid(packing) -> bool:
    problems = validate_packing(packing)
    for v in problems:
        print(f"INVALID {v.kind} bin={v.bin}: {v.detail}", file=sys.stderr)
    return bool(problems)


def _trace_record(inst, step) -> dict:
    rec = {
        "item": step.item.seq_index,
        "color": inst.name_of(step.item.color),
        "size": str(step.item.size),
        "placement": "new" if step.opened else step.placement,
        "bin": step.bin,
    }
    if step.state is not None:
        state = dict(step.state)
        for key in ("n_bins", "cd"):
            if key in state:
                state[key] = {inst.name_of(c): v for c, v in state[key].items()}
        rec["state"] = state
    return rec


def cmd_pack(args) -> int:
    inst = read_instance(args.input)
    result = run_online(args.alg, inst)
    print(f"algorithm: {args.alg}")
    print(f"bins: {result.bins}")
    if args.show:
        print(result.packing.describe())
    if args.trace:
        with open(args.trace, "w") as fh:
            for step in result.trace:
                fh.write(json.dumps(_trace_record(inst, step)) + "\n")
    return 1 if _report_invalid(result.packing) else 0


def cmd_opt(args) -> int:
    inst = read_instance(args.input)
    if args.method == "exact":
        res = exact_opt(inst, limit=args.limit)
        packing, value = res.packing, res.value
        print(f"opt: {value} (exact, {res.nodes} nodes)")
    else:
        packing = construct_lb2_packing(inst)
        value = len(packing.bins)
        print(f"opt: {value} (zero-construct, lb2={lb2(inst)})")
    if args.show:
        print(packing.describe())
    return 1 if _report_invalid(packing) else 0


def cmd_bounds(args) -> int:
    inst = read_instance(args.input)
    print(f"LB1 {lb1(inst)}")
    print(f"LB2 {lb2(inst)}")
    return 0


def cmd_adversary(args) -> int:
    failed = False
    if args.type == "zero15":
        t = adv.adversary_zero15(args.alg, args.n)
        threshold = ceil_3_2(args.n)
        evidence = lb2(t.items)
        print(f"bins: {t.final_bins}")
        print(f"threshold: {threshold} (ceil(1.5n))")
        print(f"opt evidence: lb2 = {evidence}")
        failed |= evidence != args.n
    else:
        t = adv.adversary_size25(args.alg, args.n)
        threshold = adv.ceil_5_2(args.n)
        print(f"bins: {t.final_bins}")
        print(f"threshold: {threshold} (ceil(2.5n))")
        print(f"opt evidence: witness packing with {len(t.witness.bins)} bins")
        failed |= _report_invalid(t.witness) or len(t.witness.bins) != args.n + 1
    print(f"stop: {t.reason}; phases: {', '.join(t.phases) or '-'}")
    failed |= t.final_bins < threshold or not t.mirror_ok
    if args.emit:
        write_instance(t.instance(f"{args.type} vs {args.alg} n={args.n}"), args.emit)
    return 1 if failed else 0


def cmd_gen(args) -> int:
    inst = generate(args.type, args.n)
    write_instance(inst, args.out)
    print(f"wrote {len(inst)} items to {args.out}")
    return 0


def cmd_bench(args) -> int:
    with open(args.spec) as fh:
        spec = parse_spec(fh.read())
    rows = run_experiment(spec, timing=not args.deterministic, jobs=args.jobs)
    text = emit_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    bad = [r for r in rows if r.error]
    for r in bad:
        print(f"FAILED {r.instance} {r.algorithm}: {r.error}", file=sys.stderr)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colorpack", description="Colored bin packing laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pack", help="run an online algorithm on an instance file")
    s.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    s.add_argument("--input", required=True)
    s.add_argument("--trace", help="write one JSON line per placement")
    s.add_argument("--show", action="store_true", help="print the packing")
    s.set_defaults(func=cmd_pack)

    s = sub.add_parser("opt", help="offline optimum of an instance file")
    s.add_argument("--input", required=True)
    s.add_argument("--method", choices=("exact", "zero-construct"), default="exact")
    s.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    s.add_argument("--show", action="store_true", help="print the witness packing")
    s.set_defaults(func=cmd_opt)

    s = sub.add_parser("bounds", help="print LB1 and LB2")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("adversary", help="play an adaptive adversary against an algorithm")
    s.add_argument("--type", required=True, choices=("zero15", "size25"))
    s.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--emit", help="write the emitted items as an instance file")
    s.set_defaults(func=cmd_adversary)

    s = sub.add_parser("gen", help="write a static hard instance")
    s.add_argument("--type", required=True, choices=("ffbf", "wf", "pseudo-tight"))
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="run an experiment spec and write CSV")
    s.add_argument("--spec", required=True)
    s.add_argument("--out", required=True, help="CSV path, or - for stdout")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--deterministic", action="store_true",
                   help="report runtime as 0 so equal specs give byte-identical CSV")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, InstanceTooLarge, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
