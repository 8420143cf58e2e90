"""Command-line entry point.

Exit codes: 0 on success, 1 on a solver violation, an exceeded budget or an
oracle mismatch, 2 on usage errors (bad flags, unreadable or malformed
input).  JSON is written UTF-8 with sorted keys; wall-clock fields live
under ``"timing"`` so runs can be compared byte for byte without them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import automata, blob, buckets, generators, oracle, separators
from .bitset import from_iter, to_list
from .errors import BudgetExceeded, ContractError, NoSolution, ParseError, QPBranchError, ViolationError
from .graph import Graph, format_graph, read_graph
from .solver import DEFAULT_BUDGET_NODES, DEFAULT_BUDGET_SECS, SolverConfig, solve_max_degenerate, solve_mwis


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    instance: str | None = None
    generator: dict | None = None
    problem: str = "mwis"
    d: int = 0
    t: int = 6
    mode: str = "pt"
    budget_nodes: int | None = DEFAULT_BUDGET_NODES
    budget_secs: float | None = DEFAULT_BUDGET_SECS
    validate: bool = False
    check_oracle: bool = False
    literal: bool = False
    stats_json: str | None = None
    extra: dict = field(default_factory=dict)

    def check(self) -> None:
        if self.instance is not None and self.generator is not None:
            raise UsageError("give either an instance file or --kind, not both")
        if self.t < 2:
            raise UsageError("--t must be at least 2")
        if self.d < 0:
            raise UsageError("--d must be nonnegative")
        if self.mode not in ("pt", "cgt"):
            raise UsageError("--mode is pt or cgt")
        if self.budget_nodes is not None and self.budget_nodes <= 0:
            raise UsageError("--budget-nodes must be positive")
        if self.budget_secs is not None and self.budget_secs <= 0:
            raise UsageError("--budget-secs must be positive")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(prune=not self.literal, budget_nodes=self.budget_nodes,
                            budget_secs=self.budget_secs, validate=self.validate)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _emit(obj, path: str | None = None) -> None:
    text = dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated vertices, got {text!r}") from None


# --- argument parsing ------------------------------------------------------------

def _gen_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--kind", required=required, choices=generators.KINDS)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", choices=("pt", "cgt"), default="pt")
    p.add_argument("--p", type=float, default=None, help="edge probability for random-gnp-rejection")
    p.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"), default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--spread", type=float, default=2.0)
    p.add_argument("--disconnected", action="store_true", help="allow disconnected rejection samples")


def _source(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", nargs="?", help="instance file; omit and pass --kind to generate one")
    _gen_flags(p, required=False)


def _solve_flags(p: argparse.ArgumentParser) -> None:
    _source(p)
    p.add_argument("--problem", choices=("mwis", "degenerate"), default="mwis")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--t", type=int, default=6)
    p.add_argument("--mode", choices=("pt", "cgt"), default="pt")
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET_NODES)
    p.add_argument("--budget-secs", type=float, default=DEFAULT_BUDGET_SECS)
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("--stats-json", default=None, metavar="PATH")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--literal", action="store_true", help="disable bounds and deduplication")
    p.add_argument("--json", action="store_true", help="print the full JSON record on stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpbranch", description="Branching solvers for induced subgraph problems.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    _gen_flags(g, required=True)
    g.add_argument("--t", type=int, default=6)
    g.add_argument("--out", default=None)

    _solve_flags(sub.add_parser("solve", help="run the branching solver"))
    _solve_flags(sub.add_parser("oracle", help="run the brute-force reference"))

    s = sub.add_parser("separator", help="connected balanced separator")
    _source(s)
    s.add_argument("--t", type=int, default=6)
    s.add_argument("--A", default=None, help="comma-separated vertex set to balance (default: all)")
    s.add_argument("--random-A", type=int, default=None, metavar="SEED")

    b = sub.add_parser("buckets", help="bucket statistics and heavy-vertex scores")
    _source(b)
    b.add_argument("--t", type=int, default=6)
    b.add_argument("--type", dest="bucket_kind", choices=("path", "tripod"), default="path")
    b.add_argument("--eps", default=None, help="fraction such as 1/12 (default 1/(2t))")

    k = sub.add_parser("packing", help="maximum induced packing")
    _source(k)
    k.add_argument("--family", choices=("singletons", "cycles", "connected-le-c"), default="connected-le-c")
    k.add_argument("--c", type=int, default=3)
    k.add_argument("--t", type=int, default=6)
    k.add_argument("--mode", choices=("pt", "cgt"), default="pt")
    k.add_argument("--check-oracle", action="store_true")

    a = sub.add_parser("automaton", help="automaton-constrained treedepth solver")
    _source(a)
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--automaton", default=None, metavar="PATH")
    src.add_argument("--builtin", choices=("edgeless", "matching"), default=None)
    a.add_argument("--d", type=int, default=1)
    a.add_argument("--t", type=int, default=6)
    a.add_argument("--closure-cap", type=int, default=None)
    a.add_argument("--validate", action="store_true")
    a.add_argument("--check-oracle", action="store_true")

    bt = sub.add_parser("batch", help="run a batch spec")
    bt.add_argument("spec")
    bt.add_argument("--out", default=None, help="output path; .csv writes CSV, anything else JSON")
    return ap


# --- instance loading --------------------------------------------------------------

def _load(args) -> Graph:
    if args.instance is not None and args.kind is not None:
        raise UsageError("give either an instance file or --kind, not both")
    if args.instance is not None:
        return read_graph(args.instance)
    if args.kind is None:
        raise UsageError("an instance file or --kind is required")
    return generators.generate_instance(**_gen_kwargs(vars(args)))


def _gen_kwargs(a: dict) -> dict:
    w = a.get("weights")
    return {"kind": a["kind"], "seed": a.get("seed", 0), "n": a.get("n", 10), "p": a.get("p"),
            "t": a.get("t", 6), "target": a.get("target", "pt"), "connected": not a.get("disconnected", False),
            "weights": tuple(w) if w else None, "rows": a.get("rows"), "cols": a.get("cols"),
            "density": a.get("density", 0.5), "spread": a.get("spread", 2.0)}


# --- subcommands ----------------------------------------------------------------------

def cmd_gen(args) -> int:
    G = generators.generate_instance(**_gen_kwargs(vars(args)))
    text = format_graph(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _run_config(args) -> RunConfig:
    d = args.d if args.d is not None else (1 if args.problem == "degenerate" else 0)
    if args.problem == "mwis" and args.d not in (None, 0):
        raise UsageError("--problem mwis takes no --d")
    cfg = RunConfig(args.cmd, args.instance, None if args.kind is None else _gen_kwargs(vars(args)), args.problem,
                    d, args.t, args.mode, args.budget_nodes, args.budget_secs, args.validate, args.check_oracle,
                    args.literal, args.stats_json)
    cfg.check()
    return cfg


def _oracle(G: Graph, problem: str, d: int) -> oracle.OracleResult:
    if problem == "mwis" or d == 0:
        return oracle.brute_mwis(G)
    return oracle.brute_max_degenerate(G, d)


def solve_record(G: Graph, cfg: RunConfig) -> dict:
    if cfg.problem == "mwis":
        res = solve_mwis(G, cfg.t, cfg.mode, cfg.solver_config())
    else:
        res = solve_max_degenerate(G, cfg.d, cfg.t, cfg.mode, cfg.solver_config())
    rec = res.as_dict()
    if cfg.check_oracle:
        ref = _oracle(G, cfg.problem, cfg.d)
        rec["oracleMatch"] = ref.weight == res.weight
        rec["oracleWeight"] = ref.weight
        rec["timing"]["oracleMs"] = round(ref.elapsed * 1000.0, 3)
    return rec


def _print_text(rec: dict, keys: Sequence[str]) -> None:
    for k in keys:
        if k in rec:
            v = rec[k]
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, list):
                v = " ".join(map(str, v))
            key = "oracle-match" if k == "oracleMatch" else k
            print(f"{key}: {v}")


def cmd_solve(args) -> int:
    cfg = _run_config(args)
    G = _load(args)
    rec = solve_record(G, cfg)
    if cfg.stats_json:
        _emit(rec, cfg.stats_json)
    if args.json:
        _emit(rec)
    else:
        _print_text(rec, ("weight", "solution", "oracleMatch"))
    return 0 if rec.get("oracleMatch", True) else 1


def cmd_oracle(args) -> int:
    cfg = _run_config(args)
    G = _load(args)
    ref = _oracle(G, cfg.problem, cfg.d)
    rec = {"n": G.n, "m": G.m, "problem": cfg.problem, "d": cfg.d, "weight": ref.weight,
           "solution": ref.vertices, "timing": {"elapsedMs": round(ref.elapsed * 1000.0, 3)}}
    if cfg.stats_json:
        _emit(rec, cfg.stats_json)
    if args.json:
        _emit(rec)
    else:
        _print_text(rec, ("weight", "solution"))
    return 0


def cmd_separator(args) -> int:
    G = _load(args)
    if args.A is not None and args.random_A is not None:
        raise UsageError("--A and --random-A are exclusive")
    if args.A is not None:
        A = from_iter(_vertex_list(args.A))
    elif args.random_A is not None:
        rng = random.Random(args.random_A)
        A = from_iter(v for v in range(G.n) if rng.random() < 0.5) or 1
    else:
        A = G.vertices
    if A & ~G.vertices:
        raise UsageError("--A names vertices outside the graph")
    t0 = time.perf_counter()
    res = separators.connected_balanced_separator(G, args.t, A)
    rep = separators.separator_report(G, res, A)
    rep["size"] = res.X.bit_count()
    rep["connected"] = G.is_connected(res.X)
    rep["balanced"] = 2 * rep["balance"] <= A.bit_count()
    rep["timing"] = {"elapsedMs": round((time.perf_counter() - t0) * 1000.0, 3)}
    _emit(rep)
    return 0 if rep["connected"] and rep["balanced"] and rep["size"] <= args.t else 1


def cmd_buckets(args) -> int:
    G = _load(args)
    eps = Fraction(args.eps) if args.eps else Fraction(1, 2 * args.t)
    t0 = time.perf_counter()
    if args.bucket_kind == "path":
        idx = buckets.path_hit_index(G, args.t)
    else:
        idx = buckets.tripod_buckets(G, args.t)
    rep = idx.stats()
    rep["eps"] = str(eps)
    rep["scores"] = {str(v): s for v, s in buckets.heavy_scores(idx, eps).items()}
    rep["heavyVertex"] = buckets.heavy_vertex(G, eps, idx)
    rep["timing"] = {"elapsedMs": round((time.perf_counter() - t0) * 1000.0, 3)}
    _emit(rep)
    return 0


def packing_family(G: Graph, kind: str, c: int) -> list[int]:
    if kind == "singletons":
        return blob.singleton_family(G)
    if kind == "cycles":
        return blob.induced_cycle_family(G)
    return blob.connected_subsets(G, c)


def cmd_packing(args) -> int:
    G = _load(args)
    fam = packing_family(G, args.family, args.c)
    weights = [G.weight(m) for m in fam]
    res = blob.solve_max_induced_packing(G, fam, weights, args.t, args.mode)
    rec = {"family": args.family, "members": len(fam), "weight": res.weight,
           "chosen": [to_list(fam[i]) for i in res.chosen], "vertices": to_list(res.vertices),
           "timing": res.stats.pop("timing"), "stats": res.stats}
    if args.check_oracle:
        ref = oracle.brute_max_packing(G, fam, weights)
        rec["oracleMatch"] = ref.weight == res.weight
        rec["oracleWeight"] = ref.weight
    _emit(rec)
    return 0 if rec.get("oracleMatch", True) else 1


def cmd_automaton(args) -> int:
    G = _load(args)
    aut = automata.load_automaton(args.automaton) if args.automaton else automata.builtin_automaton(args.builtin)
    try:
        res = automata.solve_td_automaton(G, args.d, args.t, aut, closure_cap=args.closure_cap,
                                          validate=args.validate)
        rec = res.as_dict()
    except NoSolution as exc:
        rec = {"weight": None, "solution": None, "noSolution": str(exc)}
    rec["automaton"] = aut.name
    rec["d"] = args.d
    if args.check_oracle:
        try:
            ref = automata.brute_td_automaton(G, args.d, aut).weight
        except NoSolution:
            ref = None
        rec["oracleWeight"] = ref
        rec["oracleMatch"] = ref == rec["weight"]
    _emit(rec)
    return 0 if rec.get("oracleMatch", True) else 1


# --- batch ---------------------------------------------------------------------------

def _as_list(x) -> list:
    return x if isinstance(x, list) else [x]


def expand_batch(spec: dict) -> list[tuple[dict, dict]]:
    """Rows = instances x configs; list-valued n and seed fields expand too."""
    if not isinstance(spec, dict) or "instances" not in spec:
        raise UsageError("batch spec needs an 'instances' list")
    configs = spec.get("configs", [{}])
    rows = []
    for inst in spec["instances"]:
        if not isinstance(inst, dict):
            raise UsageError("each instance is an object")
        ns = _as_list(inst.get("n", 10))
        seeds = _as_list(inst.get("seed", 0))
        if "seeds" in inst:
            seeds = list(range(int(inst["seeds"])))
        for n, seed in product(ns, seeds):
            one = {k: v for k, v in inst.items() if k not in ("n", "seed", "seeds")}
            one.update(n=n, seed=seed)
            for cfg in configs:
                rows.append((one, cfg))
    return rows


def run_batch_row(inst: dict, cfg: dict) -> dict:
    row = {"instance": {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(inst.items())}}
    try:
        if "path" in inst:
            G = read_graph(inst["path"])
        else:
            kw = _gen_kwargs({**inst, "t": inst.get("t", cfg.get("t", 6))})
            G = generators.generate_instance(**kw)
        problem = cfg.get("problem", "mwis")
        d = int(cfg.get("d", 1 if problem == "degenerate" else 0))
        rc = RunConfig("batch", problem=problem, d=d, t=int(cfg.get("t", 6)), mode=cfg.get("mode", "pt"),
                       budget_nodes=cfg.get("budget_nodes", DEFAULT_BUDGET_NODES),
                       budget_secs=cfg.get("budget_secs", DEFAULT_BUDGET_SECS),
                       validate=bool(cfg.get("validate", False)), check_oracle=bool(cfg.get("check_oracle", False)),
                       literal=bool(cfg.get("literal", False)))
        rc.check()
        row.update(solve_record(G, rc))
        row["status"] = "ok" if row.get("oracleMatch", True) else "mismatch"
    except BudgetExceeded as exc:
        row["status"] = "budget"
        row["error"] = str(exc)
        if getattr(exc, "stats", None) is not None:
            st = exc.stats.as_dict()
            row["nodes"] = st["nodes"]
            row["maxSuccessPerPath"] = st["maxSuccessPerPath"]
            row["maxSplitPerPath"] = st["maxSplitPerPath"]
    except ViolationError as exc:
        row["status"] = "violation"
        row["error"] = str(exc)
    except (QPBranchError, UsageError, ValueError, OSError) as exc:
        row["status"] = "error"
        row["error"] = str(exc)
    row["config"] = dict(sorted(cfg.items()))
    return row


CSV_FIELDS = ("status", "kind", "n", "seed", "problem", "d", "t", "mode", "weight", "oracleMatch",
              "maxSuccessPerPath", "maxSplitPerPath", "nodesLeaf", "nodesFilter", "nodesSplit", "nodesBranch",
              "elapsedMs", "error")


def _csv_row(row: dict) -> dict:
    inst = row.get("instance", {})
    cfg = row.get("config", {})
    nodes = row.get("nodes", {})
    return {"status": row.get("status"), "kind": inst.get("kind", inst.get("path")), "n": inst.get("n"),
            "seed": inst.get("seed"), "problem": cfg.get("problem", "mwis"), "d": row.get("d", cfg.get("d")),
            "t": cfg.get("t", 6), "mode": cfg.get("mode", "pt"), "weight": row.get("weight"),
            "oracleMatch": row.get("oracleMatch"), "maxSuccessPerPath": row.get("maxSuccessPerPath"),
            "maxSplitPerPath": row.get("maxSplitPerPath"), "nodesLeaf": nodes.get("leaf"),
            "nodesFilter": nodes.get("filter"), "nodesSplit": nodes.get("split"),
            "nodesBranch": nodes.get("branch"), "elapsedMs": row.get("timing", {}).get("elapsedMs"),
            "error": row.get("error")}


def run_batch(spec: dict) -> list[dict]:
    return [run_batch_row(inst, cfg) for inst, cfg in expand_batch(spec)]


def cmd_batch(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"batch spec is not JSON: {exc}") from None
    rows = run_batch(spec)
    if args.out and args.out.endswith(".csv"):
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(_csv_row(r))
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        _emit({"rows": rows}, args.out)
    bad = sum(r["status"] != "ok" for r in rows)
    print(f"{len(rows)} rows, {bad} not ok", file=sys.stderr)
    return 0


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "oracle": cmd_oracle, "separator": cmd_separator,
            "buckets": cmd_buckets, "packing": cmd_packing, "automaton": cmd_automaton, "batch": cmd_batch}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except (UsageError, ParseError, ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ViolationError, BudgetExceeded, NoSolution) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
