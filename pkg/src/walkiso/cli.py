"""Command-line front end: decide, cross-check, hunt, benchmark, convert.

Exit codes are part of the contract and are asserted by golden tests:

  0  isomorphic (test/oracle), or a clean run with nothing suspicious
  1  not isomorphic
  2  usage error, unreadable input, malformed graph text
  3  hunt found at least one verdict/oracle disagreement
  4  unresolved: oracle ran out of budget, or a hunt ended with unresolved
     pairs and no disagreements

Hunt output is JSON lines on stdout: one manifest record, one record per
pair (disagreement and falsification records follow the pair they belong
to), one summary record last.  Reruns with the same seed and flags produce
the same records in the same order, whatever the job count.
"""

from __future__ import annotations

import argparse
import math
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, Sequence

from . import __version__
from .generators import (
    Seed,
    derive_seed,
    gnp,
    load_corpus,
    permuted_pair,
    random_regular,
)
from .graphs import Graph, ParseError, emit_edge_list, emit_graph6, parse_graph_text
from .isotest import Decision, TestConfig, iso_test
from .oracle import BudgetExhausted, exact_isomorphic
from .report import (
    classify_pair,
    disagreement_record,
    falsification_record,
    file_sha256,
    hunt_summary,
    json_line,
    pair_record,
    run_manifest,
)

EXIT_ISOMORPHIC = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_ERROR = 2
EXIT_DISAGREEMENT = 3
EXIT_UNRESOLVED = 4

DEFAULT_ORACLE_BUDGET = 2_000_000
JOBS_ENV_VAR = "WALKISO_JOBS"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as handle:
        return handle.read()


def _load_graph(path: str, fmt: str) -> Graph:
    return parse_graph_text(_read_text(path), fmt)


# ---------------------------------------------------------------------------
# test / oracle


def cmd_test(args: argparse.Namespace) -> int:
    g1 = _load_graph(args.graph1, args.format)
    g2 = _load_graph(args.graph2, args.format)
    config = TestConfig(
        early_exit=args.early_exit,
        audit_with_oracle=args.audit,
        audit_max_n=args.audit_max_n,
        oracle_budget=args.budget,
        record_diagonals=args.record_diagonals,
    )
    verdict = iso_test(g1, g2, config)
    print(json_line(verdict.to_json_dict()))
    if verdict.decision is Decision.ISOMORPHIC:
        return EXIT_ISOMORPHIC
    return EXIT_NOT_ISOMORPHIC


def cmd_oracle(args: argparse.Namespace) -> int:
    g1 = _load_graph(args.graph1, args.format)
    g2 = _load_graph(args.graph2, args.format)
    try:
        result = exact_isomorphic(g1, g2, budget=args.budget)
    except BudgetExhausted as exc:
        doc = {
            "status": "budget_exhausted",
            "budget": exc.budget,
            "nodes_explored": exc.nodes_explored,
        }
        print(json_line(doc))
        return EXIT_UNRESOLVED
    doc = {
        "isomorphic": result.isomorphic,
        "mapping": list(result.mapping.mapping) if result.mapping is not None else None,
        "nodes_explored": result.nodes_explored,
    }
    print(json_line(doc))
    return EXIT_ISOMORPHIC if result.isomorphic else EXIT_NOT_ISOMORPHIC


# ---------------------------------------------------------------------------
# hunt


def parse_generator_spec(spec: str) -> dict:
    """Parse a pair-generator spec like ``gnp:n=8,p=0.5,count=100``.

    Kinds: ``gnp`` (two independent draws per pair), ``regular``
    (two independent degree-``d`` draws), ``permuted`` (a gnp draw and a
    random relabeling of it, so the true answer is always isomorphic).
    """
    name, _, rest = spec.partition(":")
    name = name.strip()
    params: dict[str, str] = {}
    if rest.strip():
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"generator spec item {item!r} is not key=value")
            params[key.strip()] = value.strip()

    def take_int(key: str, default: Optional[int] = None) -> int:
        if key not in params:
            if default is None:
                raise ValueError(f"generator spec needs {key}=")
            return default
        return int(params.pop(key))

    def take_float(key: str) -> float:
        if key not in params:
            raise ValueError(f"generator spec needs {key}=")
        return float(params.pop(key))

    out: dict = {"name": name}
    if name in ("gnp", "permuted"):
        out["n"] = take_int("n")
        out["p"] = take_float("p")
        out["count"] = take_int("count", 10)
    elif name == "regular":
        out["n"] = take_int("n")
        out["d"] = take_int("d")
        out["count"] = take_int("count", 10)
    else:
        raise ValueError(f"unknown generator kind {name!r}")
    if params:
        raise ValueError(f"unused generator spec keys: {sorted(params)}")
    if out["count"] < 1:
        raise ValueError("generator count must be at least 1")
    return out


def _generated_pairs(gen: dict, seed: Seed) -> list[tuple[Graph, Graph, dict]]:
    pairs = []
    for i in range(gen["count"]):
        seed_a = derive_seed(seed, 2 * i)
        seed_b = derive_seed(seed, 2 * i + 1)
        if gen["name"] == "gnp":
            g1 = gnp(gen["n"], gen["p"], seed_a)
            g2 = gnp(gen["n"], gen["p"], seed_b)
        elif gen["name"] == "regular":
            g1 = random_regular(gen["n"], gen["d"], seed_a)
            g2 = random_regular(gen["n"], gen["d"], seed_b)
        else:
            base = gnp(gen["n"], gen["p"], seed_a)
            g1, g2, _ = permuted_pair(base, seed_b)
        pairs.append((g1, g2, {"kind": "generated", "pair": i}))
    return pairs


def _corpus_pairs(path: str) -> list[tuple[Graph, Graph, dict]]:
    entries = list(load_corpus(path))
    pairs = []
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            if entries[a].graph.n != entries[b].graph.n:
                continue
            source = {"kind": "corpus", "lines": [entries[a].lineno, entries[b].lineno]}
            pairs.append((entries[a].graph, entries[b].graph, source))
    return pairs


def _hunt_oracle(g1: Graph, g2: Graph, audit_max_n: int, budget: int) -> dict:
    n = max(g1.n, g2.n)
    if n > audit_max_n:
        return {"status": "skipped", "reason": f"n={n} exceeds audit threshold {audit_max_n}"}
    try:
        result = exact_isomorphic(g1, g2, budget=budget)
    except BudgetExhausted as exc:
        return {
            "status": "budget_exhausted",
            "nodes_explored": exc.nodes_explored,
            "budget": exc.budget,
        }
    return {
        "status": "completed",
        "isomorphic": result.isomorphic,
        "nodes_explored": result.nodes_explored,
    }


def _hunt_one(task: tuple) -> tuple[int, list[dict], str, bool]:
    """Process one pair; top level so worker processes can unpickle it."""
    index, g1, g2, source, audit_max_n, budget, early_exit = task
    config = TestConfig(early_exit=early_exit, record_diagonals=True)
    verdict = iso_test(g1, g2, config)
    oracle_doc = _hunt_oracle(g1, g2, audit_max_n, budget)
    classification = classify_pair(verdict, oracle_doc["status"], oracle_doc.get("isomorphic"))
    records = [pair_record(index, g1, g2, verdict, oracle_doc, classification, source=source)]
    had_falsification = verdict.falsification_event is not None
    if had_falsification:
        records.append(falsification_record(index, verdict.falsification_event))
    if classification == "disagreement":
        records.append(disagreement_record(index, g1, g2, verdict, oracle_doc))
    return index, records, classification, had_falsification


def _resolve_jobs(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        jobs = flag_value
    elif os.environ.get(JOBS_ENV_VAR):
        jobs = int(os.environ[JOBS_ENV_VAR])
    else:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ValueError("job count must be at least 1")
    return jobs


def cmd_hunt(args: argparse.Namespace) -> int:
    started = time.monotonic()
    corpus_meta = None
    generator_meta = None
    if args.corpus is not None:
        pairs = _corpus_pairs(args.corpus)
        corpus_meta = {
            "path": args.corpus,
            "sha256": file_sha256(args.corpus),
            "pairs": len(pairs),
        }
    else:
        gen = parse_generator_spec(args.gen)
        seed = Seed(args.seed)
        generator_meta = dict(gen, seed=seed.value)
        pairs = _generated_pairs(gen, seed)

    jobs = _resolve_jobs(args.jobs)
    settings = {
        "audit_max_n": args.audit_max_n,
        "budget": args.budget,
        "jobs": jobs,
        "early_exit": args.early_exit,
    }
    manifest = run_manifest(
        "hunt",
        args.effective_argv,
        __version__,
        corpus=corpus_meta,
        generator=generator_meta,
        settings=settings,
    )
    print(json_line(manifest))

    tasks = [
        (i, g1, g2, source, args.audit_max_n, args.budget, args.early_exit)
        for i, (g1, g2, source) in enumerate(pairs)
    ]
    if jobs > 1 and len(tasks) > 1:
        # executor.map yields in submission order, so parallel runs emit
        # records in the same order as -j1 runs.
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results: Iterable = pool.map(_hunt_one, tasks, chunksize=8)
            counts = _emit_hunt_records(results)
    else:
        counts = _emit_hunt_records(map(_hunt_one, tasks))

    agreements, disagreements, unresolved, falsifications, indices = counts
    summary = hunt_summary(
        pairs=len(tasks),
        agreements=agreements,
        disagreements=disagreements,
        unresolved=unresolved,
        falsifications=falsifications,
        elapsed_s=time.monotonic() - started,
        disagreement_indices=indices,
    )
    print(json_line(summary))
    if disagreements:
        return EXIT_DISAGREEMENT
    if unresolved:
        return EXIT_UNRESOLVED
    return 0


def _emit_hunt_records(results: Iterable) -> tuple[int, int, int, int, list[int]]:
    agreements = disagreements = unresolved = falsifications = 0
    disagreement_indices: list[int] = []
    for index, records, classification, had_falsification in results:
        for record in records:
            print(json_line(record))
        if classification == "agreement":
            agreements += 1
        elif classification == "disagreement":
            disagreements += 1
            disagreement_indices.append(index)
        else:
            unresolved += 1
        if had_falsification:
            falsifications += 1
    return agreements, disagreements, unresolved, falsifications, disagreement_indices


# ---------------------------------------------------------------------------
# bench


def _bench_sizes(n_min: int, n_max: int) -> list[int]:
    if n_min < 2 or n_max < n_min:
        raise ValueError("need 2 <= n-min <= n-max")
    sizes = []
    n = n_min
    while n <= n_max:
        sizes.append(n)
        n *= 2
    return sizes


def _fit_loglog_slope(points: list[tuple[int, float]]) -> Optional[float]:
    """Least-squares slope of log(y) against log(x); None if degenerate."""
    usable = [(x, y) for x, y in points if y > 0]
    if len(usable) < 2:
        return None
    xs = [math.log(x) for x, _ in usable]
    ys = [math.log(y) for _, y in usable]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    var = sum((x - mean_x) ** 2 for x in xs)
    if var == 0:
        return None
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return cov / var


def cmd_bench(args: argparse.Namespace) -> int:
    seed = Seed(args.seed)
    sizes = _bench_sizes(args.n_min, args.n_max)
    config = TestConfig(early_exit=args.early_exit)
    rows = []
    slope_points = []
    for n in sizes:
        if (n * args.degree) % 2 or args.degree >= n:
            raise ValueError(f"degree {args.degree} infeasible at n={n}")
        mults, adds, comparisons, bitlens, walls = [], [], [], [], []
        stop_rules: dict[str, int] = {}
        for s in range(args.samples):
            graph_seed = derive_seed(seed, 2 * (n * 1000 + s))
            perm_seed = derive_seed(seed, 2 * (n * 1000 + s) + 1)
            base = random_regular(n, args.degree, graph_seed)
            _, image, _ = permuted_pair(base, perm_seed)
            t0 = time.perf_counter()
            verdict = iso_test(base, image, config)
            walls.append(time.perf_counter() - t0)
            mults.append(verdict.op_count.mults)
            adds.append(verdict.op_count.adds)
            comparisons.append(verdict.op_count.comparisons)
            bitlens.append(verdict.op_count.max_bitlen)
            rule = verdict.stop_rule.value
            stop_rules[rule] = stop_rules.get(rule, 0) + 1
        median_mults = statistics.median(mults)
        rows.append(
            {
                "n": n,
                "samples": args.samples,
                "median_mults": median_mults,
                "median_adds": statistics.median(adds),
                "median_comparisons": statistics.median(comparisons),
                "median_max_bitlen": statistics.median(bitlens),
                "median_wall_s": round(statistics.median(walls), 6),
                "bitlen_ceiling": round(n * math.log2(n), 3),
                "stop_rules": stop_rules,
            }
        )
        slope_points.append((n, float(median_mults)))
    slope = _fit_loglog_slope(slope_points)
    doc = {
        "kind": "bench",
        "seed": seed.value,
        "degree": args.degree,
        "early_exit": args.early_exit,
        "rows": rows,
        "slope_mults": None if slope is None else round(slope, 4),
    }
    print(json_line(doc))
    return 0


# ---------------------------------------------------------------------------
# convert


def cmd_convert(args: argparse.Namespace) -> int:
    graph = parse_graph_text(_read_text(args.input), args.from_fmt)
    if args.to_fmt == "graph6":
        out = emit_graph6(graph) + "\n"
    else:
        out = emit_edge_list(graph)
    if args.output == "-":
        sys.stdout.write(out)
    else:
        with open(args.output, "w", encoding="ascii") as handle:
            handle.write(out)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkiso",
        description=(
            "Graph isomorphism testing by iterated closed-walk-count "
            "refinement, with an independent exact oracle for auditing."
        ),
    )
    parser.add_argument("--version", action="version", version=f"walkiso {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=["auto", "graph6", "edgelist"],
            default="auto",
            help="input format (default: detect per file)",
        )

    p_test = sub.add_parser("test", help="decide isomorphism by diagonal refinement")
    p_test.add_argument("graph1", help="path to first graph ('-' for stdin)")
    p_test.add_argument("graph2", help="path to second graph")
    add_format(p_test)
    p_test.add_argument("--early-exit", action="store_true", help="stop when the partition stabilizes")
    p_test.add_argument("--audit", action="store_true", help="cross-check the verdict with the exact oracle")
    p_test.add_argument("--audit-max-n", type=int, default=16, help="largest n the audit oracle will attempt")
    p_test.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="audit oracle node budget")
    p_test.add_argument("--record-diagonals", action="store_true", help="include per-round diagonals in the verdict")
    p_test.set_defaults(func=cmd_test)

    p_oracle = sub.add_parser("oracle", help="decide isomorphism by exhaustive search")
    p_oracle.add_argument("graph1")
    p_oracle.add_argument("graph2")
    add_format(p_oracle)
    p_oracle.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="search node budget")
    p_oracle.set_defaults(func=cmd_oracle)

    p_hunt = sub.add_parser("hunt", help="run many pairs and cross-check against the oracle")
    group = p_hunt.add_mutually_exclusive_group(required=True)
    group.add_argument("--corpus", help="graph6 file; all same-order pairs are tested")
    group.add_argument("--gen", help="generator spec, e.g. gnp:n=8,p=0.5,count=100")
    p_hunt.add_argument("--seed", type=int, default=0, help="base seed for --gen")
    p_hunt.add_argument("--audit-max-n", type=int, default=16, help="largest n the oracle will attempt")
    p_hunt.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="oracle node budget per pair")
    p_hunt.add_argument(
        "--jobs",
        type=int,
        default=None,
        help=f"worker processes (default: ${JOBS_ENV_VAR} or cpu count)",
    )
    p_hunt.add_argument("--early-exit", action="store_true", help="enable the stabilization stop rule")
    p_hunt.set_defaults(func=cmd_hunt)

    p_bench = sub.add_parser("bench", help="operation counts on random regular pairs")
    p_bench.add_argument("--n-min", type=int, default=16)
    p_bench.add_argument("--n-max", type=int, default=128)
    p_bench.add_argument("--samples", type=int, default=3, help="instances per size")
    p_bench.add_argument("--degree", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--early-exit", action="store_true")
    p_bench.set_defaults(func=cmd_bench)

    p_convert = sub.add_parser("convert", help="convert between graph6 and edge-list text")
    p_convert.add_argument("input", nargs="?", default="-", help="input path (default stdin)")
    p_convert.add_argument("output", nargs="?", default="-", help="output path (default stdout)")
    p_convert.add_argument(
        "--from",
        dest="from_fmt",
        choices=["auto", "graph6", "edgelist"],
        default="auto",
        help="input format (default: detect)",
    )
    p_convert.add_argument(
        "--to",
        dest="to_fmt",
        choices=["graph6", "edgelist"],
        required=True,
        help="output format",
    )
    p_convert.set_defaults(func=cmd_convert)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.effective_argv = list(argv) if argv is not None else list(sys.argv[1:])
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_ERROR
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
