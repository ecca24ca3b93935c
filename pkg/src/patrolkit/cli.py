"""Command-line interface.

Subcommands cover the solver (solve, evaluate, oracle), the exact decision
procedure (decide, min-latency), graph decompositions (decompose), instance
generation (gen), and a report mode that writes a CSV summary plus a rendered
figure next to it. All results go to stdout as JSON with floats trimmed to 12
significant digits; input problems exit with status 2 and resource limits
with status 3.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import asdict
from pathlib import Path

from . import decider, graphdecomp, solver
from .errors import LimitExceeded, PatrolError
from .metric import MetricSpace, from_matrix, from_points
from .solver import CyclicSolution, SolverConfig
from .spanning import make_partition
from .tsp import TspAlgorithm


def _clean(value):
    """Round floats to 12 significant digits, recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _emit(payload) -> None:
    print(json.dumps(_clean(payload), indent=2))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise PatrolError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PatrolError(f"{path} is not valid JSON: {exc}") from exc


def _load_space(path: str) -> MetricSpace:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise PatrolError(f"{path} must hold a JSON object")
    has_points = "points" in data
    has_matrix = "matrix" in data
    if has_points == has_matrix:
        raise PatrolError("instance needs exactly one of 'points' or 'matrix'")
    labels = data.get("labels")
    if has_points:
        return from_points(data["points"], labels)
    return from_matrix(data["matrix"], labels)


def _load_graph(path: str) -> graphdecomp.MultiGraph:
    data = _load_json(path)
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise PatrolError("graph input needs 'vertices' and 'edges'")
    return graphdecomp.make_graph(data["vertices"], data["edges"])


def _solution_payload(sol: CyclicSolution, k: int) -> dict:
    return {
        "latency": sol.latency,
        "k": k,
        "parts": [list(p) for p in sol.partition.parts],
        "tours": [{"order": list(t.order), "length": t.length} for t in sol.tours],
        "robots": list(sol.robots),
    }


def _render_if_asked(space: MetricSpace, sol: CyclicSolution, path: str | None, payload: dict):
    if path is not None:
        from .render import render_solution

        payload["figure"] = render_solution(space, sol, path)


def _cmd_solve(args) -> dict:
    space = _load_space(args.input)
    algo = TspAlgorithm.from_name(args.tsp)
    config = SolverConfig(k=args.k, epsilon=args.epsilon, tsp=algo, parallel=args.parallel)
    sol = solver.solve(space, config)
    payload = _solution_payload(sol, args.k)
    payload["gamma"] = algo.gamma
    payload["epsilon"] = args.epsilon
    payload["bound"] = (1.0 + args.epsilon) * algo.gamma
    _render_if_asked(space, sol, args.render, payload)
    return payload


def _cmd_evaluate(args) -> dict:
    space = _load_space(args.input)
    try:
        parts = json.loads(args.partition)
    except json.JSONDecodeError as exc:
        raise PatrolError(f"--partition is not valid JSON: {exc}") from exc
    partition = make_partition(parts, space.n)
    algo = TspAlgorithm.from_name(args.tsp)
    sol = solver.evaluate(space, partition, args.k, algo)
    payload = _solution_payload(sol, args.k)
    payload["gamma"] = algo.gamma
    return payload


def _cmd_oracle(args) -> dict:
    space = _load_space(args.input)
    sol = solver.brute_force_cyclic(space, args.k)
    return _solution_payload(sol, args.k)


def _cmd_decide(args) -> dict:
    space = _load_space(args.input)
    answer, witness = decider.decide(space, args.k, args.ell)
    payload = {"answer": answer, "k": args.k, "ell": args.ell}
    if args.witness is not None and witness is not None:
        blob = {
            "k": args.k,
            "ell": args.ell,
            "prefix": [asdict(c) for c in witness.prefix],
            "cycle": [asdict(c) for c in witness.cycle],
        }
        Path(args.witness).write_text(json.dumps(_clean(blob), indent=2))
        payload["witness"] = args.witness
    return payload


def _cmd_min_latency(args) -> dict:
    space = _load_space(args.input)
    return {"latency": decider.minimal_latency(space, args.k), "k": args.k}


def _cmd_decompose(args) -> dict:
    g = _load_graph(args.input)
    if args.mode == "eulerize":
        duplicated, enlarged = graphdecomp.eulerize(g)
        return {
            "mode": args.mode,
            "duplicated": list(duplicated),
            "result": {
                "vertices": enlarged.vertex_count,
                "edges": [list(e) for e in enlarged.edges],
            },
        }
    if args.mode == "even":
        dec = graphdecomp.decompose_even(g)
    elif args.mode == "odd-anchored":
        if args.anchor is None:
            raise PatrolError("--anchor is required for mode odd-anchored")
        dec = graphdecomp.decompose_odd_anchored(g, args.anchor)
    else:
        dec = graphdecomp.decompose_with_claw(g)
    return {
        "mode": args.mode,
        "two_paths": [list(p) for p in dec.two_paths],
        "claw": list(dec.claw) if dec.claw is not None else None,
        "leftover": dec.leftover_edge,
    }


def _gen_points(rng: random.Random, n: int) -> dict:
    pts: list[tuple[float, float]] = []
    seen: set[tuple[float, float]] = set()
    while len(pts) < n:
        p = (round(rng.random(), 6), round(rng.random(), 6))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return {"points": [list(p) for p in pts]}


def _gen_matrix(rng: random.Random, n: int, max_dist: int) -> dict:
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(1, max_dist)
    for m in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][m] + d[m][j]
                if via < d[i][j]:
                    d[i][j] = via
    return {"matrix": d}


def _gen_graph(rng: random.Random, n: int, extra: int) -> dict:
    edges = []
    for v in range(1, n):
        edges.append([rng.randrange(v), v])
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        edges.append(sorted((u, v)))
    return {"vertices": n, "edges": edges}


def _cmd_gen(args) -> dict:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("PATROL_SEED", "0"))
    rng = random.Random(seed)
    if args.n < 1:
        raise PatrolError("--n must be at least 1")
    if args.kind == "points":
        return _gen_points(rng, args.n)
    if args.kind == "matrix":
        if args.max_dist < 1:
            raise PatrolError("--max-dist must be at least 1")
        return _gen_matrix(rng, args.n, args.max_dist)
    return _gen_graph(rng, args.n, args.extra_edges)


def _cmd_report(args) -> dict:
    space = _load_space(args.input)
    algo = TspAlgorithm.from_name(args.tsp)
    config = SolverConfig(k=args.k, epsilon=args.epsilon, tsp=algo, parallel=args.parallel)
    sol = solver.solve(space, config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "summary.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["part", "sites", "robots", "tour_length", "part_latency", "order"])
        for i, (part, tour, robots) in enumerate(
            zip(sol.partition.parts, sol.tours, sol.robots)
        ):
            writer.writerow(
                [
                    i,
                    len(part),
                    robots,
                    f"{tour.length:.12g}",
                    f"{tour.length / robots:.12g}",
                    " ".join(str(v) for v in tour.order),
                ]
            )
    payload = _solution_payload(sol, args.k)
    payload["gamma"] = algo.gamma
    payload["epsilon"] = args.epsilon
    payload["bound"] = (1.0 + args.epsilon) * algo.gamma
    payload["csv"] = str(csv_path)
    try:
        from .render import render_solution

        payload["figure"] = render_solution(space, sol, str(outdir / "tours.svg"))
    except PatrolError:
        payload["figure"] = None
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patrol",
        description="Minimum-latency cyclic patrol schedules over finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance(p):
        p.add_argument("--input", required=True, help="instance JSON (points or matrix)")

    def add_tsp(p):
        p.add_argument("--tsp", default="exact", choices=TspAlgorithm.NAMES,
                       help="tour builder (default: exact)")

    p = sub.add_parser("solve", help="near-optimal cyclic schedule")
    add_instance(p)
    p.add_argument("--k", type=int, required=True, help="number of robots")
    p.add_argument("--epsilon", type=float, required=True, help="approximation slack")
    add_tsp(p)
    p.add_argument("--parallel", action="store_true", help="evaluate candidates in parallel")
    p.add_argument("--render", metavar="FILE", help="also draw the tours to an SVG file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("evaluate", help="latency of a given partition")
    add_instance(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--partition", required=True, help="JSON list of site groups")
    add_tsp(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search (small instances)")
    add_instance(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("decide", help="is integer latency ell achievable?")
    add_instance(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--witness", metavar="FILE", help="write the periodic schedule here")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("min-latency", help="smallest achievable integer latency")
    add_instance(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_min_latency)

    p = sub.add_parser("decompose", help="multigraph decompositions")
    p.add_argument("--input", required=True, help="graph JSON (vertices, edges)")
    p.add_argument("--mode", required=True, choices=["eulerize", "even", "odd-anchored", "claw"])
    p.add_argument("--anchor", type=int, help="anchor vertex for odd-anchored mode")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", required=True, choices=["points", "matrix", "graph"])
    p.add_argument("--n", type=int, required=True, help="sites or vertices")
    p.add_argument("--seed", type=int, help="RNG seed (default: PATROL_SEED or 0)")
    p.add_argument("--max-dist", type=int, default=3, help="largest entry for matrix instances")
    p.add_argument("--extra-edges", type=int, default=2, help="edges beyond a spanning tree")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("report", help="solve, then write CSV and figure to a directory")
    add_instance(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    add_tsp(p)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--outdir", required=True, help="directory for summary.csv and tours.svg")
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except LimitExceeded as exc:
        _emit({"error": str(exc)})
        return 3
    except PatrolError as exc:
        _emit({"error": str(exc)})
        return 2
    _emit(payload)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
