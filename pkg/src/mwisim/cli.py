"""Command-line harness: generate graphs, run experiments, verify guarantees.

Exit codes: 0 success, 2 usage error, 3 invariant/verification failure,
4 engine contract violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import records as rec
from .algorithms import ALGORITHMS, UsageError
from .cliquecycle import rand_mis
from .engine import EngineError
from .graphs import (FAMILIES, WEIGHT_MODELS, GraphError, generate, load,
                     save)
from .sparsify import sparse_approx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_ENGINE = 4


def _default_seed() -> int:
    return int(os.environ.get("MWISIM_SEED", "0"))


def _parse_seeds(spec: str) -> list[int]:
    """Seed list syntax: '7', '0:20' (half-open range), or '1,2,5'."""
    if ":" in spec:
        lo, hi = spec.split(":", 1)
        return list(range(int(lo), int(hi)))
    return [int(s) for s in spec.split(",") if s.strip()]


def _graph_params(args) -> dict:
    params = {}
    if args.family == "gnp":
        if args.p is None:
            raise UsageError("gnp needs --p")
        params = {"n": args.n, "p": args.p}
    elif args.family == "cycle_of_cliques":
        if args.n0 is None or args.n1 is None:
            raise UsageError("cycle_of_cliques needs --n0 and --n1")
        params = {"n0": args.n0, "n1": args.n1}
    else:
        if args.n is None:
            raise UsageError(f"{args.family} needs --n")
        params = {"n": args.n}
    return params


def _load_or_generate(args) -> tuple:
    if getattr(args, "graph", None):
        text = open(args.graph, encoding="utf-8").read()
        return load(text), rec.GraphSource.from_file(args.graph, text)
    if not args.family:
        raise UsageError("provide --graph FILE or a generator spec (--family ...)")
    params = _graph_params(args)
    g = generate(args.family, params, args.weights, args.graph_seed)
    return g, rec.GraphSource.generator(args.family, params, args.weights,
                                        args.graph_seed)


def _add_generator_flags(p: argparse.ArgumentParser, seed_flags=("--graph-seed",)):
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, help="edge probability for gnp")
    p.add_argument("--n0", type=int, help="cycle length for cycle_of_cliques")
    p.add_argument("--n1", type=int, help="clique size for cycle_of_cliques")
    p.add_argument("--weights", choices=WEIGHT_MODELS, default="unit")
    p.add_argument(*seed_flags, dest="graph_seed", type=int,
                   default=_default_seed())


def cmd_gen(args) -> int:
    g = generate(args.family, _graph_params(args), args.weights, args.graph_seed)
    text = save(g)
    if args.output:
        open(args.output, "w", encoding="utf-8").write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_run(args) -> int:
    g, source = _load_or_generate(args)
    if args.alg == "arb" and args.alpha is None:
        raise UsageError("algorithm 'arb' requires --alpha "
                         "(degeneracy is a safe surrogate; see `mwisim gen`)")
    params = {"eps": args.eps, "c": args.c, "lam": args.lam,
              "alpha": args.alpha, "log_base": args.log_base}
    out_records = []
    for seed in _parse_seeds(args.seeds):
        out_records.append(rec.make_record(
            g, source, args.alg, params, seed, mode=args.mode,
            oracle=args.oracle, oracle_cap=args.oracle_cap,
            dump_stack=args.dump_stack))
    text = rec.to_jsonl(out_records)
    if args.output:
        open(args.output, "w", encoding="utf-8").write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        open(args.csv, "w", encoding="utf-8").write(rec.to_csv(out_records))
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    if args.suite == "invariants":
        results = verify.run_invariant_suite(quick=args.quick)
    else:
        results = verify.run_acceptance_suite(quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if args.json:
        payload = [{"name": r.name, "passed": r.passed, "detail": r.detail,
                    "seconds": round(r.seconds, 3)} for r in results]
        open(args.json, "w", encoding="utf-8").write(json.dumps(payload, indent=2))
    return EXIT_OK if not failed else EXIT_INVARIANT


def cmd_reduce(args) -> int:
    base = generate("cycle", {"n": args.n0}, "unit", 0)

    def alg(g1, seed):
        r = sparse_approx(g1, lam=args.lam, seed=seed, mode="local")
        return r.iset.members, r.stats

    lines = []
    for seed in _parse_seeds(args.seeds):
        r = rand_mis(base, alg, args.n1, seed=seed, c_approx=args.c)
        lines.append(json.dumps({
            "n0": r.n0, "n1": r.n1, "seed": seed,
            "mis_size": len(r.mis.members), "mapped_size": len(r.mapped.members),
            "max_gap": r.gap, "inner_rounds": r.inner_stats.rounds,
            "inner_messages": r.inner_stats.messages_sent,
            "r_large": r.r_large, "r_small": r.r_small,
        }, sort_keys=True))
    text = "".join(line + "\n" for line in lines)
    if args.output:
        open(args.output, "w", encoding="utf-8").write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mwisim",
        description="CONGEST/LOCAL simulator and MaxIS approximation harness")
    sub = top.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph file")
    _add_generator_flags(p_gen, seed_flags=("--seed", "--graph-seed"))
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_gen)

    p_run = sub.add_parser("run", help="run an algorithm over a seed sweep")
    p_run.add_argument("--graph", help="graph file (alternative to --family)")
    _add_generator_flags(p_run)
    p_run.add_argument("--alg", required=True, choices=ALGORITHMS)
    p_run.add_argument("--eps", type=float)
    p_run.add_argument("--c", type=float)
    p_run.add_argument("--lam", type=float)
    p_run.add_argument("--alpha", type=int)
    p_run.add_argument("--log-base", choices=("two", "natural"), default="two")
    p_run.add_argument("--mode", choices=("congest", "local"), default="congest")
    p_run.add_argument("--seeds", default=str(_default_seed()))
    p_run.add_argument("--oracle", action="store_true",
                       help="compare against the exact solver (small graphs)")
    p_run.add_argument("--oracle-cap", type=int, default=26)
    p_run.add_argument("--dump-stack", action="store_true",
                       help="include the local-ratio stack in the record")
    p_run.add_argument("-o", "--output", help="JSONL output path (default stdout)")
    p_run.add_argument("--csv", help="also write a CSV projection")
    p_run.set_defaults(func=cmd_run)

    p_ver = sub.add_parser("verify", help="run invariant or acceptance suites")
    p_ver.add_argument("suite", choices=("invariants", "acceptance"))
    p_ver.add_argument("--quick", action="store_true",
                       help="reduced corpus sizes for a fast smoke run")
    p_ver.add_argument("--json", help="write machine-readable results here")
    p_ver.set_defaults(func=cmd_verify)

    p_red = sub.add_parser("reduce", help="cycle-of-cliques reduction runs")
    p_red.add_argument("--n0", type=int, required=True)
    p_red.add_argument("--n1", type=int, required=True)
    p_red.add_argument("--lam", type=float, default=4.0)
    p_red.add_argument("--c", type=float, default=8.0,
                       help="approximation constant for the diagnostic radii")
    p_red.add_argument("--seeds", default=str(_default_seed()))
    p_red.add_argument("-o", "--output")
    p_red.set_defaults(func=cmd_reduce)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ValueError, OverflowError) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except EngineError as e:
        print(f"engine violation: {e}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
