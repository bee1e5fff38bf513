"""Command-line front end: ``zxconnect {connect,components,depth,bound,tables}``."""
from __future__ import annotations

import argparse
import io
import json
import secrets
import sys
from dataclasses import dataclass

from . import __version__
from .analyzer import decide_connected, group_components
from .depth import asap_schedule, depth_bounds, lower_bound_fit, monte_carlo_depth, trial_seeds
from .errors import CapacityError, GraphParseError, InfeasibleError, NodeRangeError
from .graph import (
    Graph,
    bfs_components,
    complete_graph,
    generate_erdos_renyi,
    generate_fixed_edge_count,
    read_edge_list,
    shuffle_edges,
)
from .partition_bound import partition_bound_report, write_partition_csv, write_row_count_csv
from .simulator import (
    DEFAULT_QUBIT_CAP,
    MeasurementRecord,
    run_circuit,
    run_circuit_ancilla_mode,
    sample_component_product,
    sample_measurements,
    survival_report,
)
from .zx import compile_graph_to_circuit

SCHEMA = "1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAP = 4
EXIT_INFEASIBLE = 5


class UsageError(Exception):
    pass


@dataclass
class GraphSource:
    kind: str
    graph: Graph
    description: dict


def _load_graph(args, graph_seed: int) -> GraphSource:
    if args.graph is not None:
        g = read_edge_list(args.graph, node_count=args.nodes, relabel=args.relabel)
        return GraphSource("file", g, {"source": "file", "path": str(args.graph)})
    if args.er is not None:
        n, p = int(args.er[0]), float(args.er[1])
        return GraphSource("er", generate_erdos_renyi(n, p, graph_seed), {"source": "er", "p": p})
    if args.complete is not None:
        return GraphSource("complete", complete_graph(args.complete), {"source": "complete"})
    n, m = args.random_m
    return GraphSource("random-m", generate_fixed_edge_count(n, m, graph_seed), {"source": "random-m"})


def _graph_summary(src: GraphSource) -> dict:
    return {**src.description, "n": src.graph.node_count, "m": src.graph.m}


def _measure(graph: Graph, args, shots: int, ancilla_seed: int, shot_seed: int) -> tuple[MeasurementRecord, float]:
    """Shots plus the survival probability of the run that produced them."""
    if args.analytic:
        record = sample_component_product(graph, shots, shot_seed)
        survival = 1.0 if args.mode == "ancilla" else float(survival_report(graph).survival)
        return record, survival
    circuit = compile_graph_to_circuit(graph)
    if args.mode == "ancilla":
        state = run_circuit_ancilla_mode(circuit, ancilla_seed, cap=args.cap)
    else:
        state = run_circuit(circuit, cap=args.cap)
    return sample_measurements(state, shots, shot_seed), state.survival_probability


def cmd_connect(args) -> tuple[dict, str | None]:
    graph_seed, ancilla_seed, shot_seed = trial_seeds(args.seed, 3)
    src = _load_graph(args, graph_seed)
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    record, survival = _measure(src.graph, args, args.shots, ancilla_seed, shot_seed)
    verdict = decide_connected(record)
    report = {
        "schema": SCHEMA,
        "command": "connect",
        "seed": args.seed,
        "graph": _graph_summary(src),
        "mode": "analytic" if args.analytic else args.mode,
        "survival": survival,
        "shots": list(record.shots),
        **verdict.to_dict(),
    }
    report["decay_estimate"] = survival_report(src.graph).to_dict()["decay_estimate"]
    if not args.no_oracle:
        truth = bfs_components(src.graph)
        connected = truth.component_count == 1
        report["oracle"] = {
            "connected": connected,
            "k": truth.component_count,
            "verdict_correct": connected == verdict.connected,
        }
    return report, None


def cmd_components(args) -> tuple[dict, str | None]:
    graph_seed, ancilla_seed, shot_seed = trial_seeds(args.seed, 3)
    src = _load_graph(args, graph_seed)
    truth = None if args.no_oracle else bfs_components(src.graph)
    shots = args.shots
    if shots is None:
        if truth is None:
            raise UsageError("--shots is required with --no-oracle")
        shots = 2 * truth.component_count
    if shots < 1:
        raise UsageError("--shots must be at least 1")
    record, _ = _measure(src.graph, args, shots, ancilla_seed, shot_seed)
    recovered = group_components(record)
    report = {
        "schema": SCHEMA,
        "command": "components",
        "seed": args.seed,
        "graph": _graph_summary(src),
        "mode": "analytic" if args.analytic else args.mode,
        "M": shots,
        "shots": list(record.shots),
        "recovered": recovered.to_dict(),
    }
    if truth is not None:
        report["oracle"] = truth.to_dict()
        report["match"] = recovered == truth
    return report, None


def cmd_depth(args) -> tuple[dict, str | None]:
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be at least 1")
    graph_seed, shuffle_seed, experiment_seed = trial_seeds(args.seed, 3)
    src = _load_graph(args, graph_seed)
    g = src.graph
    n = g.node_count
    report: dict = {
        "schema": SCHEMA,
        "command": "depth",
        "seed": args.seed,
        "graph": _graph_summary(src),
    }
    csv_text = None
    if args.trials:
        if src.kind == "er":
            exp = monte_carlo_depth(n, args.trials, experiment_seed, p=float(args.er[1]))
        elif src.kind == "random-m":
            exp = monte_carlo_depth(n, args.trials, experiment_seed, m=g.m)
        else:
            exp = monte_carlo_depth(n, args.trials, experiment_seed, graph=g)
        m_ref = g.m if src.kind != "er" else round(exp.m_or_p * n * (n - 1) / 2)
        report["experiment"] = exp.to_dict()
        report["bounds"] = _bounds(n, m_ref)
        report["fit"] = lower_bound_fit(n, m_ref) if n >= 1 else None
        buf = io.StringIO()
        exp.write_csv(buf)
        csv_text = buf.getvalue()
    else:
        if args.shuffle:
            g = shuffle_edges(g, shuffle_seed)
        sched = asap_schedule(g)
        m_eff = g.non_loop_edge_count()
        report.update(
            {
                "shuffled": bool(args.shuffle),
                "depth": sched.depth,
                "bounds": _bounds(n, m_eff),
                "fit": lower_bound_fit(n, m_eff) if n >= 1 else None,
            }
        )
        buf = io.StringIO()
        buf.write("edge,u,v,layer\n")
        for i, ((u, v), layer) in enumerate(zip(g.edges, sched.layer_of_edge)):
            buf.write(f"{i},{u},{v},{'' if layer is None else layer}\n")
        csv_text = buf.getvalue()
    return report, csv_text


def _bounds(n: int, m: int) -> dict:
    if n < 1:
        return {"best": 0, "worst": 0}
    b = depth_bounds(n, m)
    return {"best": b.best, "worst": b.worst}


def cmd_bound(args) -> tuple[dict, str | None]:
    rep = partition_bound_report(args.n, args.m)
    buf = io.StringIO()
    rep.write_csv(buf)
    return {"schema": SCHEMA, "command": "bound", **rep.to_dict()}, buf.getvalue()


def cmd_tables(args) -> tuple[dict, str | None]:
    if args.max < 1:
        raise UsageError("--max must be at least 1")
    buf = io.StringIO()
    if args.kind == "rows":
        write_row_count_csv(buf, args.max)
    else:
        write_partition_csv(buf, args.max)
    return {"schema": SCHEMA, "command": "tables", "kind": args.kind, "csv": buf.getvalue()}, buf.getvalue()


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="edge-list file")
    src.add_argument("--er", nargs=2, metavar=("N", "P"), help="Erdos-Renyi G(N, P)")
    src.add_argument("--complete", type=int, metavar="N", help="complete graph K_N, sorted edges")
    src.add_argument("--random-m", nargs=2, type=int, metavar=("N", "M"), help="uniform graph with M distinct edges")
    p.add_argument("--nodes", type=int, help="node count for --graph (needed for isolated nodes)")
    p.add_argument("--relabel", action="store_true", help="map sparse file labels to dense ids")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="master seed (random if omitted; always echoed)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _add_sim(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("projector", "ancilla"), default="projector")
    p.add_argument("--analytic", action="store_true", help="sample the closed-form final state (no simulation, no cap)")
    p.add_argument("--no-oracle", action="store_true", help="skip the classical BFS comparison")
    p.add_argument("--cap", type=int, default=DEFAULT_QUBIT_CAP, help="max simulated qubits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zxconnect", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("connect", help="decide connectedness from sampled shots")
    _add_graph_source(p)
    _add_common(p)
    _add_sim(p)
    p.add_argument("--shots", type=int, default=2)
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("components", help="recover connected components from shots")
    _add_graph_source(p)
    _add_common(p)
    _add_sim(p)
    p.add_argument("--shots", type=int, default=None, help="default: twice the true component count")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("depth", help="ASAP circuit depth, bounds and Monte-Carlo averages")
    _add_graph_source(p)
    _add_common(p)
    p.add_argument("--trials", type=int, help="run a shuffled Monte-Carlo experiment")
    p.add_argument("--shuffle", action="store_true", help="shuffle edge order once before scheduling")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("bound", help="per-depth counts and mean-depth upper bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("tables", help="row-count or partition-count tables as CSV")
    p.add_argument("--kind", choices=("rows", "partitions"), default="rows")
    p.add_argument("--max", type=int, default=13)
    _add_common(p)
    p.set_defaults(func=cmd_tables)
    return parser


def _render(report: dict, csv_text: str | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        if csv_text is None:
            raise UsageError("this command has no CSV output")
        return csv_text
    lines = []
    for key, value in report.items():
        if key == "csv":
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        args.seed = secrets.randbits(32)
    try:
        report, csv_text = args.func(args)
        text = _render(report, csv_text, args.format)
    except UsageError as exc:
        print(f"zxconnect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GraphParseError, NodeRangeError) as exc:
        print(f"zxconnect: cannot load graph: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapacityError as exc:
        print(f"zxconnect: {exc}; rerun with --analytic for the closed-form state", file=sys.stderr)
        return EXIT_CAP
    except (InfeasibleError, ValueError) as exc:
        print(f"zxconnect: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"zxconnect: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
