"""Command-line interface: ``localcut {nibble,partition,conductance,oracle,gen,verify}``.

Exit codes: 0 on success (an empty cut is a success), 2 on bad input,
3 when a guaranteed property fails to hold or a report does not verify.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .generators import generate
from .graph import GraphError, VertexSet, balance, conductance
from .io import (REPORT_VERSION, EdgeListError, LoadedGraph, dump_report, format_edge_list,
                 fraction_str, graph_digest, load_report, parse_edge_list)
from .nibble import GuaranteeViolation, run_nibble
from .oracles import OracleSizeError, min_conductance_exhaustive
from .params import CutReport, as_fraction, profile_by_name
from .partition import draw_b, draw_vertex, edge_count_of, make_rng, partition

EXIT_INPUT = 2
EXIT_GUARANTEE = 3


class InputError(Exception):
    pass


def _load(args) -> tuple[LoadedGraph, str, tuple[int, ...]]:
    """The graph, a description of its source, and the planted set if any."""
    if bool(args.input) == bool(args.gen):
        raise InputError("give exactly one of --input and --gen")
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            loaded = parse_edge_list(fh.read())
        return loaded, f"file:{args.input}", ()
    return _load_gen(args.gen, getattr(args, "seed", None))


def _load_gen(spec: str, seed: Optional[int]) -> tuple[LoadedGraph, str, tuple[int, ...]]:
    kind, _, rest = spec.partition(":")
    params = [p for p in rest.split(",") if p]
    gen = generate(kind, params, seed=seed or 0)
    source = f"gen:{kind}:{','.join(params)}"
    if gen.kind == "planted_cut" and len(params) < 4:
        source += f",{seed or 0}"
    return LoadedGraph(gen.graph, tuple(range(gen.graph.vertex_count))), source, gen.planted


def _input_doc(loaded: LoadedGraph, source: str) -> dict[str, Any]:
    g = loaded.graph
    identity = loaded.original_ids == tuple(range(g.vertex_count))
    return {
        "source": source,
        "digest": graph_digest(g, loaded.original_ids),
        "vertices": g.vertex_count,
        "volume": g.total_volume,
        "id_map": None if identity else list(loaded.original_ids),
    }


def _cut_doc(loaded: LoadedGraph, cut: Optional[CutReport], g=None) -> dict[str, Any]:
    g = g or loaded.graph
    if cut is None:
        return {"empty": True, "members": [], "conductance": "1/1", "volume": 0,
                "balance": "0/1"}
    return {
        "empty": cut.empty,
        "members": loaded.to_original(cut.members),
        "conductance": fraction_str(cut.conductance),
        "volume": cut.volume,
        "balance": fraction_str(cut.balance),
    }


def _base(command: str, loaded: LoadedGraph, source: str) -> dict[str, Any]:
    return {"version": REPORT_VERSION, "command": command, "input": _input_doc(loaded, source)}


def cmd_nibble(args) -> dict[str, Any]:
    loaded, source, _ = _load(args)
    g = loaded.graph
    profile = profile_by_name(args.profile)
    phi = as_fraction(args.phi)
    if args.vertex is None and args.seed is None:
        raise InputError("nibble needs --vertex or --seed")
    if args.b is None and args.seed is None:
        raise InputError("nibble needs --b or --seed")
    rng = make_rng(args.seed)[0] if args.seed is not None else None
    if args.vertex is not None:
        v = loaded.to_compact([args.vertex])[0]
    else:
        v = draw_vertex(g, rng)
    b = args.b if args.b is not None else draw_b(edge_count_of(g), rng)
    run = run_nibble(g, v, phi, b, profile)
    report = _base("nibble", loaded, source)
    report["algorithm"] = "nibble"
    report["parameters"] = {
        "phi": fraction_str(phi), "b": b, "profile": profile.name, "seed": args.seed,
        "vertex": loaded.original_ids[v],
    }
    report["cut"] = _cut_doc(loaded, run.cut)
    report["diagnostics"] = {
        "work_units": run.stats.work_units,
        "steps": run.stats.steps_taken,
        "found_at_step": run.cut.found_at_step if run.cut else None,
        "sweep_index": run.cut.sweep_index if run.cut else None,
        "ell": run.params.ell,
        "t_last": run.params.t_last,
        "eps": fraction_str(run.params.eps),
        "f1": fraction_str(run.params.f1),
        "stop_reason": "found" if run.cut else ("died-out" if run.stats.died_out else "exhausted"),
    }
    return report


def _partition_doc(loaded, g, theta, p_fail, profile, seed, max_iterations) -> dict[str, Any]:
    d, trace = partition(g, theta, p_fail, profile, seed, max_iterations=max_iterations)
    return {
        "seed": seed,
        "cut": _cut_doc(loaded, d),
        "pieces": [
            {"members": loaded.to_original(p.members), "conductance_in_view": fraction_str(p.conductance),
             "volume": p.volume, "iteration": p.found_at_step, "vertex": loaded.original_ids[p.start_vertex],
             "b": p.b, "boundary_in_view": bnd}
            for p, bnd in zip(trace.pieces, trace.piece_boundaries)
        ],
        "iterations": trace.iterations,
        "stop_reason": trace.stop_reason,
        "work_units": trace.work_units,
    }


def cmd_partition(args) -> dict[str, Any]:
    loaded, source, planted = _load(args)
    g = loaded.graph
    profile = profile_by_name(args.profile)
    theta, p_fail = as_fraction(args.theta), as_fraction(args.p_fail)
    seeds = [args.seed + i for i in range(args.trials)]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        runs = list(pool.map(
            lambda s: _partition_doc(loaded, g, theta, p_fail, profile, s, args.max_iterations), seeds))
    report = _base("partition", loaded, source)
    report["algorithm"] = "partition"
    report["parameters"] = {
        "theta": fraction_str(theta), "p_fail": fraction_str(p_fail), "profile": profile.name,
        "seed": args.seed, "trials": args.trials, "max_iterations": args.max_iterations,
    }
    if planted:
        report["planted"] = loaded.to_original(planted)
    report.update(runs[0])
    if args.trials > 1:
        report["trials"] = runs
    return report


def cmd_conductance(args) -> dict[str, Any]:
    loaded, source, _ = _load(args)
    g = loaded.graph
    ids = [int(x) for x in args.set.split(",") if x.strip()]
    members = VertexSet.of(g, loaded.to_compact(ids))
    report = _base("conductance", loaded, source)
    report["algorithm"] = "conductance"
    report["cut"] = _cut_doc(loaded, CutReport.for_set(g, members, "conductance"))
    return report


def cmd_oracle(args) -> dict[str, Any]:
    loaded, source, _ = _load(args)
    members, value = min_conductance_exhaustive(loaded.graph)
    report = _base("oracle", loaded, source)
    report["algorithm"] = "exhaustive-min-conductance"
    report["cut"] = _cut_doc(loaded, CutReport.for_set(loaded.graph, VertexSet.of(loaded.graph, members),
                                                       "oracle"))
    assert report["cut"]["conductance"] == fraction_str(value)
    return report


def cmd_gen(args) -> str:
    loaded, source, planted = _load_gen(args.gen, args.seed)
    header = f"generated by localcut {source}\nplanted: {','.join(map(str, planted))}"
    return format_edge_list(loaded.graph, header=header)


def _recheck_cut(g, loaded, doc) -> tuple[VertexSet, list[str]]:
    problems = []
    members = VertexSet.of(g, loaded.to_compact(doc["members"]))
    cond = conductance(g, members) if len(members) else Fraction(1)
    if fraction_str(cond) != doc["conductance"]:
        problems.append(f"conductance {doc['conductance']} != recomputed {fraction_str(cond)}")
    if members.cached_volume != doc["volume"]:
        problems.append(f"volume {doc['volume']} != recomputed {members.cached_volume}")
    if len(members) and fraction_str(balance(g, members)) != doc["balance"]:
        problems.append("balance does not match")
    return members, problems


def verify_report(report: dict[str, Any], loaded: LoadedGraph) -> list[str]:
    """Every discrepancy between a report and the graph it claims to describe."""
    g = loaded.graph
    problems = []
    if graph_digest(g, loaded.original_ids) != report["input"]["digest"]:
        problems.append("input digest does not match")
    command = report["command"]
    runs = (report.get("trials") or [report]) if command == "partition" else [report]
    for run in runs:
        members, issues = _recheck_cut(g, loaded, run["cut"])
        problems += issues
        vol = members.cached_volume
        if command == "nibble" and len(members):
            phi = Fraction(report["parameters"]["phi"])
            if conductance(g, members) > phi:
                problems.append("nibble cut conductance exceeds phi")
            if 6 * vol > 5 * g.total_volume:
                problems.append("nibble cut volume exceeds 5/6 vol V")
        if command == "partition":
            theta = Fraction(report["parameters"]["theta"])
            if 8 * vol > 7 * g.total_volume:
                problems.append(f"seed {run['seed']}: vol D exceeds 7/8 vol V")
            if len(members) and conductance(g, members) > theta:
                problems.append(f"seed {run['seed']}: Phi(D) exceeds theta")
            seen: set[int] = set()
            for piece in run["pieces"]:
                ids = set(loaded.to_compact(piece["members"]))
                if seen & ids:
                    problems.append(f"seed {run['seed']}: pieces overlap")
                seen |= ids
            if seen != set(members):
                problems.append(f"seed {run['seed']}: pieces do not union to D")
    return problems


def cmd_verify(args) -> dict[str, Any]:
    with open(args.report, encoding="utf-8") as fh:
        report = load_report(fh.read())
    if args.input or args.gen:
        loaded, _, _ = _load(args)
    else:
        source = report["input"]["source"]
        if source.startswith("file:"):
            with open(source[5:], encoding="utf-8") as fh:
                loaded = parse_edge_list(fh.read())
        else:
            loaded, _, _ = _load_gen(source[4:], None)
    problems = verify_report(report, loaded)
    if problems:
        raise GuaranteeViolation("; ".join(problems))
    return {"version": REPORT_VERSION, "command": "verify", "verified": report["command"], "ok": True}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localcut", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p, gen_only=False):
        if not gen_only:
            p.add_argument("--input", help="edge-list file")
        p.add_argument("--gen", help="generator spec, e.g. barbell:50, ring:4,5, planted:200,0.1,0")
        p.add_argument("--output", help="write the result here instead of standard output")

    p = sub.add_parser("nibble", help="run Nibble from one vertex")
    graph_args(p)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--vertex", type=int, help="start vertex (input id); drawn by degree if omitted")
    p.add_argument("--seed", type=int)
    p.add_argument("--profile", choices=["paper", "practical"], default="paper")
    p.set_defaults(func=cmd_nibble)

    p = sub.add_parser("partition", help="run Partition")
    graph_args(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--p-fail", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--profile", choices=["paper", "practical"], default="paper")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="threads for --trials")
    p.add_argument("--max-iterations", type=int, help="override the iteration cap")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("conductance", help="exact conductance of a vertex set")
    graph_args(p)
    p.add_argument("--set", required=True, help="comma-separated input ids")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_conductance)

    p = sub.add_parser("oracle", help="exhaustive minimum conductance (n <= 14)")
    graph_args(p)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    graph_args(p, gen_only=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen, input=None)

    p = sub.add_parser("verify", help="recheck a report against its input")
    graph_args(p)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except GuaranteeViolation as exc:
        print(f"localcut: guarantee violated: {exc}", file=sys.stderr)
        return EXIT_GUARANTEE
    except (InputError, EdgeListError, GraphError, OracleSizeError, ValueError, OSError) as exc:
        print(f"localcut: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = result if isinstance(result, str) else dump_report(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
