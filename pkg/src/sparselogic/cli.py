"""Command-line front end.

Machine-readable JSON goes to stdout (or --out); short human summaries go to
stderr.  Identical argv and seed produce byte-identical stdout.  Exit codes:
0 success, 1 capability/parameter errors, 2 usage errors.

Environment overrides: SPARSELOGIC_SEED and SPARSELOGIC_THREADS supply
defaults for --seed and --threads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .errors import CapabilityError, ConstructionError, HypothesisViolationError, ParameterError


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict
    seed: int | None
    threads: int

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "threads": self.threads,
            "version": f"sparselogic-{__version__}",
        }


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _emit(args, payload: dict, summary: str) -> None:
    text = json.dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    sys.stderr.write(summary + "\n")


def _config(args, command: str, **params) -> dict:
    return RunConfig(
        command, params, getattr(args, "seed", None), getattr(args, "threads", 1)
    ).to_dict()


def _load_sentence(args):
    from .logic import formulas, load_sentence, parse

    named = {
        "triangle": formulas.triangle_sentence,
        "isolated_triangle": formulas.isolated_triangle_sentence,
        "no_unspiked_triangle": formulas.no_unspiked_triangle_sentence,
        "cycle": formulas.cycle_exists_sentence,
        "two_disjoint_circuits": formulas.two_disjoint_circuits_sentence,
    }
    if args.sentence in named:
        return named[args.sentence]()
    if os.path.exists(args.sentence):
        return load_sentence(args.sentence)
    return parse(args.sentence)


def _cmd_sample(args) -> None:
    from .graphs import GnpParams, sample_gnp, write_edge_list

    g = sample_gnp(GnpParams(args.n, args.c, args.seed))
    if args.out_edges:
        with open(args.out_edges, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    payload = {
        "config": _config(args, "sample", n=args.n, c=args.c),
        "n": g.n,
        "edges": g.m,
    }
    if not args.out_edges:
        payload["edge_list"] = [list(e) for e in g.edges]
    _emit(args, payload, f"sampled G({args.n}, {args.c}/{args.n}): {g.m} edges")


def _cmd_census(args) -> None:
    from .local_limit import census_vs_poisson

    rep = census_vs_poisson(args.c, args.R, args.n, args.trials, args.seed)
    payload = {"config": _config(args, "census", c=args.c, R=args.R, n=args.n, trials=args.trials)}
    payload.update(rep.to_dict())
    _emit(args, payload, f"census: {'PASS' if rep.passed else 'FAIL'} over {args.trials} trials")


def _cmd_mc_prob(args) -> None:
    from .logic import check
    from .montecarlo import estimate_probability

    sentence = _load_sentence(args)
    negate = args.negate

    def predicate(g):
        value = check(g, sentence)
        return (not value) if negate else value

    res = estimate_probability(predicate, args.n, args.c, args.trials, args.seed, args.threads)
    payload = {
        "config": _config(
            args, "mc-prob", sentence=args.sentence, negate=negate, n=args.n,
            c=args.c, trials=args.trials,
        )
    }
    payload.update(res.to_dict())
    _emit(args, payload, f"estimate {res.estimate:.4f} +- {res.stderr:.4f}")


def _cmd_decide(args) -> None:
    from .subcritical import decide

    sentence = _load_sentence(args)
    res = decide(sentence, args.c, args.eps, m_rep=args.mrep, s_max=args.smax)
    payload = {
        "config": _config(
            args, "decide", sentence=args.sentence, c=args.c, eps=args.eps,
            mrep=args.mrep, smax=args.smax,
        )
    }
    payload.update(res.to_dict())
    _emit(args, payload, f"decide: [{res.lo:.5f}, {res.hi:.5f}] width {res.hi - res.lo:.5f}")


def _cmd_build_h(args) -> None:
    from .supercritical import build_arith_graph, build_arith_graph_by_w1
    from .graphs import write_edge_list

    if args.w1 is not None:
        h = build_arith_graph_by_w1(args.K, args.w1)
    else:
        if args.k1 is None or args.n is None:
            raise ParameterError("need either --w1 or both --k1 and --n")
        h = build_arith_graph(args.k1, args.K, args.n)
    if args.out_edges:
        with open(args.out_edges, "w", encoding="utf-8") as fh:
            write_edge_list(h.graph, fh)
    if args.out_meta:
        with open(args.out_meta, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(h.metadata_dict()) + "\n")
    payload = {
        "config": _config(args, "build-h", K=args.K, w1=args.w1, k1=args.k1, n=args.n),
    }
    payload.update(h.to_json_dict())
    _emit(args, payload, f"built hub graph: v={h.graph.n} e={h.graph.m} w={h.w} w1={h.w1} l={h.l}")


def _cmd_verify_h(args) -> None:
    from .supercritical import ArithGraph, verify_arithmetization

    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(sys.stdin)
    if "edges" not in doc:
        raise ParameterError("input lacks an edge list; pipe the build-h JSON document")
    h = ArithGraph.from_json_dict(doc)
    rep = verify_arithmetization(h)
    payload = {"config": _config(args, "verify-h", infile=args.infile)}
    payload.update(rep.to_dict())
    _emit(args, payload, f"verify-h: {'PASS' if rep.passed else 'FAIL'} ({len(rep.failures)} failures)")


def _cmd_nonconv(args) -> None:
    from .supercritical import nonconvergence_demo

    rep = nonconvergence_demo(args.c, args.K, k1=args.k1)
    payload = {"config": _config(args, "nonconv", c=args.c, K=args.K, k1=args.k1)}
    payload.update(rep.to_dict())
    _emit(
        args,
        payload,
        f"nonconv: {len(rep.rows)} rows, true-subsequence {rep.subsequence_true}, "
        f"false-subsequence {rep.subsequence_false}, agree={rep.all_agree}",
    )


def _cmd_ctk(args) -> None:
    from .graphs import read_edge_list, write_edge_list
    from .supercritical import (
        DetectStatus,
        build_topological_clique,
        detect_topological_clique,
    )

    if args.build:
        k, w = args.build
        g = build_topological_clique(k, w)
        if args.out_edges:
            with open(args.out_edges, "w", encoding="utf-8") as fh:
                write_edge_list(g, fh)
        payload = {
            "config": _config(args, "ctk", build=[k, w]),
            "n": g.n,
            "edges": g.m,
        }
        if not args.out_edges:
            payload["edge_list"] = [list(e) for e in g.edges]
        _emit(args, payload, f"built clean topological clique: v={g.n} e={g.m}")
        return
    if not args.infile or args.k is None:
        raise ParameterError("detection needs --k and --in FILE (or use --build K W)")
    with open(args.infile, "r", encoding="utf-8") as fh:
        g = read_edge_list(fh)
    res = detect_topological_clique(g, args.k, budget=args.budget)
    payload = {
        "config": _config(args, "ctk", k=args.k, infile=args.infile, budget=args.budget),
        "status": res.status.value,
    }
    if res.status is DetectStatus.FOUND:
        payload["branches"] = list(res.witness.branches)
        payload["paths"] = {f"{i},{j}": list(p) for (i, j), p in res.witness.paths.items()}
    _emit(args, payload, f"ctk detect: {res.status.value}")


def _cmd_moments(args) -> None:
    from .moments import compute_recurrences, constants_LM

    p = args.c / args.n
    table = compute_recurrences(args.n, args.m, p, args.smax)
    holds = table.chain_holds()
    payload = {
        "config": _config(args, "moments", n=args.n, c=args.c, m=args.m, smax=args.smax),
        "L": table.L,
        "M1": table.M1,
        "M": table.M,
        "chain": holds,
        "rows": table.rows(),
    }
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("s,x,X,x_minus,X_minus,y,y_bound\n")
            for row in table.rows():
                fh.write(
                    f"{row['s']},{row['x']!r},{row['X']!r},{row['x_minus']!r},"
                    f"{row['X_minus']!r},{row['y']!r},{row['y_bound']!r}\n"
                )
    _emit(args, payload, f"moments: chain {'holds' if all(holds.values()) else 'VIOLATED'}")


def _cmd_closedform(args) -> None:
    from .closed_form import builtin_examples, differentiate, evaluate, parse as cf_parse, serialize

    if args.builtin:
        form = builtin_examples()[args.builtin].closed_form
    elif args.expr:
        form = cf_parse(args.expr)
    else:
        raise ParameterError("need --expr or --builtin")
    if args.derivative:
        form = differentiate(form)
    value = evaluate(form, args.c)
    payload = {
        "config": _config(
            args, "closedform", expr=args.expr, builtin=args.builtin,
            c=args.c, derivative=args.derivative,
        ),
        "expression": serialize(form),
        "value": value,
    }
    _emit(args, payload, f"value at c={args.c}: {value:.6f}")


def _cmd_transfer(args) -> None:
    from .equivalence import transfer_harness

    rep = transfer_harness(args.R, args.trials, args.seed)
    payload = {
        "config": _config(args, "transfer", R=args.R, trials=args.trials),
        "pairs_tested": rep.pairs_tested,
        "pairs_refused": rep.pairs_refused,
        "battery": list(rep.battery),
        "violations": rep.violations,
        "pass": rep.passed,
    }
    _emit(
        args,
        payload,
        f"transfer: {rep.pairs_tested} pairs, {len(rep.violations)} violations",
    )


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sparselogic",
        description="Logic on sparse random graphs: experiments and checks.",
    )
    top.add_argument("--out", help="write the JSON payload to this file instead of stdout")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=_env_int("SPARSELOGIC_SEED", 0))
        p.add_argument(
            "--threads", type=int, default=_env_int("SPARSELOGIC_THREADS", 1),
            help="trial parallelism (default 1 for reproducibility baselines)",
        )

    p = sub.add_parser("sample", help="draw one G(n, c/n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--out-edges", help="write the edge-list file here")
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("census", help="cycle-neighborhood census vs Poisson predictions")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--R", type=int, default=4)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--trials", type=int, default=2000)
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("mc-prob", help="Monte Carlo probability of a sentence")
    p.add_argument("--sentence", required=True, help="file path, inline text, or builtin name")
    p.add_argument("--negate", action="store_true")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--trials", type=int, default=1000)
    common(p)
    p.set_defaults(func=_cmd_mc_prob)

    p = sub.add_parser("decide", help="interval for the limiting probability, c < 1")
    p.add_argument("--sentence", required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--mrep", type=int, default=3)
    p.add_argument("--smax", type=int, default=5)
    common(p, seed=False)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("build-h", help="build an arithmetized hub graph")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--w1", type=int, help="desk-scale build by marked-vertex count")
    p.add_argument("--k1", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--out-edges")
    p.add_argument("--out-meta")
    common(p, seed=False)
    p.set_defaults(func=_cmd_build_h)

    p = sub.add_parser("verify-h", help="verify a built hub graph (stdin or --in)")
    p.add_argument("--in", dest="infile")
    common(p, seed=False)
    p.set_defaults(func=_cmd_verify_h)

    p = sub.add_parser("nonconv", help="nonconvergence parity table over n")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--k1", type=float)
    common(p, seed=False)
    p.set_defaults(func=_cmd_nonconv)

    p = sub.add_parser("ctk", help="build or detect clean topological cliques")
    p.add_argument("--build", nargs=2, type=int, metavar=("K", "W"))
    p.add_argument("--detect", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--in", dest="infile")
    p.add_argument("--budget", type=int, default=500_000)
    p.add_argument("--out-edges")
    common(p, seed=False)
    p.set_defaults(func=_cmd_ctk)

    p = sub.add_parser("moments", help="recurrence table and bound-chain check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--smax", type=int, required=True)
    p.add_argument("--csv", help="also write plot-ready CSV rows here")
    common(p, seed=False)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("closedform", help="evaluate a limit-law expression")
    p.add_argument("--expr")
    p.add_argument("--builtin", choices=["triangle", "isolated_triangle", "unspiked_triangle"])
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--derivative", action="store_true")
    common(p, seed=False)
    p.set_defaults(func=_cmd_closedform)

    p = sub.add_parser("transfer", help="equivalence transfer harness")
    p.add_argument("--R", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=_cmd_transfer)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (CapabilityError, ParameterError, ConstructionError, HypothesisViolationError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
