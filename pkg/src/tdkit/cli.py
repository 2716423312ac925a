"""Command-line interface.

Every command prints a run report on stdout (JSON with --json, readable
key/value lines otherwise) and exits 0 on success, 1 on a negative decision
(bound not met, verification failed, infeasible), 2 on usage or input
errors.  All quantities in reports are exact integers.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import fileio
from .ces import CesInstance, ces_solve_bounded, ces_solve_exact
from .kernel import fpt_solve, kernelize
from .reductions import (
    DEFAULT_SIZE_CAP,
    ReductionParams,
    build_witness,
    ces_to_td,
    clique_to_ces,
    verify_contraction_sequence,
)
from .search import decide_td, td_distance
from .strings import TdkError, feasibility_precheck

REPORT_SCHEMA = "tdkit-report/1"


def _digest(path: str) -> dict:
    h = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return {"path": str(path), "sha256": h}


def _load_pair(source_path: str, target_path: str):
    sources, table = fileio.parse_string_file(source_path)
    targets, _ = fileio.parse_string_file(target_path, table)
    return sources[0], targets[0]


def _witness_steps(witness):
    if witness is None:
        return None
    return [[w.step.start, w.step.half_len] for w in witness]


def _cmd_distance(args):
    source, target = _load_pair(args.source, args.target)
    max_k = args.max_k if args.max_k is not None else max(len(target) - len(source), 0)
    res = td_distance(source, target, max_k)
    result = {
        "status": res.status,
        "distance": res.distance,
        "max_k": res.max_k,
        "explored": res.explored,
        "reason": res.reason,
        "witness": _witness_steps(res.witness),
    }
    inputs = {"source": _digest(args.source), "target": _digest(args.target)}
    return (0 if res.found else 1), result, inputs


def _cmd_decide(args):
    source, target = _load_pair(args.source, args.target)
    res = decide_td(source, target, args.k)
    witness_file = None
    if res.reached and args.witness:
        fileio.emit_schedule_file(args.witness, [w.step for w in res.witness])
        witness_file = args.witness
    result = {
        "reached": res.reached,
        "depth": res.depth,
        "k": args.k,
        "explored": res.explored,
        "witness": _witness_steps(res.witness),
        "witness_file": witness_file,
    }
    inputs = {"source": _digest(args.source), "target": _digest(args.target)}
    return (0 if res.reached else 1), result, inputs


def _cmd_kernelize(args):
    source, target = _load_pair(args.source, args.target)
    inputs = {"source": _digest(args.source), "target": _digest(args.target)}
    pre = feasibility_precheck(source, target)
    if not pre.feasible:
        return 1, {"status": "infeasible", "reason": pre.reason}, inputs
    kern = kernelize(source, target)
    files = None
    if args.out_prefix:
        s_path = f"{args.out_prefix}.source.txt"
        t_path = f"{args.out_prefix}.target.txt"
        fileio.emit_string_file(s_path, [kern.s_prime])
        fileio.emit_string_file(t_path, [kern.t_prime])
        files = {"source": s_path, "target": t_path}
    blocks = [
        {
            "symbol": kern.s_prime.table.name(kern.mapping[i]),
            "interval": [a, b],
            "tokens": " ".join(source.table.name(t) for t in source.tokens[a:b]),
        }
        for i, (a, b) in enumerate(kern.partition.blocks)
    ]
    result = {
        "status": "ok",
        "s_prime": kern.s_prime.text(),
        "t_prime": kern.t_prime.text(),
        "blocks": blocks,
        "sizes": {
            "source": len(source),
            "target": len(target),
            "s_prime": len(kern.s_prime),
            "t_prime": len(kern.t_prime),
        },
        "files": files,
    }
    return 0, result, inputs


def _cmd_fpt_solve(args):
    source, target = _load_pair(args.source, args.target)
    out = fpt_solve(source, target, args.k)
    result = {
        "reached": out.result.reached,
        "depth": out.result.depth,
        "k": args.k,
        "explored": out.result.explored,
        "rejected_by": out.rejected_by,
        "kernel_sizes": None
        if out.s_prime_len is None
        else {"s_prime": out.s_prime_len, "t_prime": out.t_prime_len},
    }
    inputs = {"source": _digest(args.source), "target": _digest(args.target)}
    return (0 if out.result.reached else 1), result, inputs


def _cmd_ces_solve(args):
    graph = fileio.parse_graph_file(args.graph)
    inst = CesInstance(graph, args.c)
    sol = ces_solve_bounded(inst) if args.bounded else ces_solve_exact(inst)
    result = {
        "cost": sol.cost,
        "subset": list(sol.subset),
        "profit": args.c * graph.m - sol.cost,
        "solver": "bounded" if args.bounded else "exact",
        "n": graph.n,
        "m": graph.m,
    }
    return 0, result, {"graph": _digest(args.graph)}


def _cmd_ces_decide(args):
    graph = fileio.parse_graph_file(args.graph)
    inst = CesInstance(graph, args.c)
    optimum = ces_solve_exact(inst).cost
    ok = optimum <= args.budget
    result = {"decision": ok, "budget": args.budget, "optimal_cost": optimum}
    return (0 if ok else 1), result, {"graph": _digest(args.graph)}


def _cmd_reduce_clique(args):
    graph = fileio.parse_graph_file(args.graph)
    out = clique_to_ces(graph, args.k)
    result = {
        "c": out.instance.c,
        "r": out.r,
        "k": out.k,
        "profit_at_threshold": out.profit,
        "n": graph.n,
        "m": graph.m,
    }
    return 0, result, {"graph": _digest(args.graph)}


def _cmd_reduce_ces_to_td(args):
    graph = fileio.parse_graph_file(args.graph)
    params = None
    if (args.d is None) != (args.p is None):
        raise TdkError("--d and --p must be given together")
    if args.d is not None:
        params = ReductionParams(args.d, args.p)
    cap = int(os.environ["TDK_SIZE_CAP"]) if "TDK_SIZE_CAP" in os.environ else DEFAULT_SIZE_CAP
    red = ces_to_td(graph, args.c, args.r, params, size_cap=cap, force=args.force)
    prefix = args.out_prefix
    s_path, t_path = f"{prefix}.source.txt", f"{prefix}.target.txt"
    manifest = f"{prefix}.manifest.json"
    fileio.emit_string_file(s_path, [red.source])
    fileio.emit_string_file(t_path, [red.target])
    fileio.write_manifest(manifest, red, s_path, t_path)
    result = {
        "manifest": manifest,
        "files": {"source": s_path, "target": t_path},
        "params": {"d": red.params.d, "p": red.params.p},
        "budget": red.budget,
        "fidelity": red.fidelity,
        "sizes": {"source": len(red.source), "target": len(red.target)},
    }
    return 0, result, {"graph": _digest(args.graph)}


def _cmd_witness(args):
    red = fileio.load_reduction_from_manifest(args.manifest)
    subset = sorted({int(v) for v in args.subset.split(",") if v.strip() != ""})
    schedule = build_witness(red, red.graph, subset)
    check = verify_contraction_sequence(red.target, schedule, red.source)
    if args.out:
        fileio.emit_schedule_file(args.out, schedule.steps)
    result = {
        "subset": subset,
        "phases": {
            "type2_removals": schedule.phases.type2_removals,
            "activation": schedule.phases.activation,
            "type1_removals": schedule.phases.type1_removals,
            "cleanup": schedule.phases.cleanup,
        },
        "total": schedule.phases.total,
        "budget": red.budget,
        "within_budget": schedule.phases.total <= red.budget,
        "verified": check.ok,
        "out": args.out,
    }
    return (0 if check.ok else 1), result, {"manifest": _digest(args.manifest)}


def _cmd_verify(args):
    targets, table = fileio.parse_string_file(args.target)
    sources, _ = fileio.parse_string_file(args.source, table)
    steps = fileio.parse_schedule_file(args.schedule)
    check = verify_contraction_sequence(targets[0], steps, sources[0])
    result = {
        "verified": check.ok,
        "length": check.length,
        "failed_at": check.failed_at,
        "reason": check.reason,
    }
    inputs = {
        "target": _digest(args.target),
        "schedule": _digest(args.schedule),
        "source": _digest(args.source),
    }
    return (0 if check.ok else 1), result, inputs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdkit",
        description="Tandem-duplication distance toolkit: search, kernelization, "
        "cost-effective subgraphs, and hardness-reduction generators.",
    )
    parser.add_argument("--json", action="store_true", help="emit the run report as JSON")
    parser.add_argument("--seed", type=int, default=None, help="seed echoed in the report")
    sub = parser.add_subparsers(dest="cmd")

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("distance", _cmd_distance, help="minimum duplication count from source to target")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--max-k", type=int, default=None, dest="max_k")

    p = add("decide", _cmd_decide, help="is the target within k contractions of the source?")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--witness", default=None, help="write the found schedule to this file")

    p = add("kernelize", _cmd_kernelize, help="collapse maximal stable runs of an instance")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out-prefix", default=None, dest="out_prefix")

    p = add("fpt-solve", _cmd_fpt_solve, help="decide via the collapsed instance")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int, required=True)

    ces = sub.add_parser("ces", help="cost-effective subgraph")
    ces_sub = ces.add_subparsers(dest="ces_cmd")
    p = ces_sub.add_parser("solve", help="minimize subset cost")
    p.set_defaults(handler=_cmd_ces_solve)
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--bounded", action="store_true", help="enumerate only subsets of size <= c")
    p = ces_sub.add_parser("decide", help="is the optimum at most the budget?")
    p.set_defaults(handler=_cmd_ces_decide)
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)

    red = sub.add_parser("reduce", help="hardness-reduction instance builders")
    red_sub = red.add_subparsers(dest="reduce_cmd")
    p = red_sub.add_parser("clique-to-ces", help="clique question as a subgraph-cost question")
    p.set_defaults(handler=_cmd_reduce_clique)
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p = red_sub.add_parser("ces-to-td", help="subgraph-cost question as a distance question")
    p.set_defaults(handler=_cmd_reduce_ces_to_td)
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--force", action="store_true", help="ignore the size cap")
    p.add_argument("--out-prefix", default="reduction", dest="out_prefix")

    p = add("witness", _cmd_witness, help="contraction schedule realizing a vertex subset")
    p.add_argument("--manifest", required=True)
    p.add_argument("--subset", required=True, help='comma-separated vertex ids, e.g. "0,2,5"')
    p.add_argument("--out", default=None, help="write the schedule to this file")

    p = add("verify", _cmd_verify, help="replay a schedule and check it ends at the source")
    p.add_argument("--target", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--source", required=True)

    return parser


def _render_human(result: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in result.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_human(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_usage(sys.stderr)
        return 2
    started = time.perf_counter()
    try:
        code, result, inputs = handler(args)
    except (TdkError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "schema": REPORT_SCHEMA,
        "command": args.cmd,
        "inputs": inputs,
        "seed": args.seed,
        "result": result,
        "wall_time": time.perf_counter() - started,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_render_human(report["result"])))
    return code


def main_entry() -> None:  # console-script wrapper
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
