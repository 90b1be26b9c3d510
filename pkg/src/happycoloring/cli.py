"""Command-line entry point.

Solvers print a single line ``VERDICT yes|no OPT <value>`` and exit with 0
for yes and 1 for no.  Usage and parse errors exit with 2, and instances too
large for an exhaustive oracle exit with 3.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io
from .cluster import find_cluster_modulator, solve_mhv_cluster
from .cwexpr import eval_wexpr, random_wexpr, solve_nmc_cw
from .gadgets import (
    gen_crbds_to_mhe,
    gen_crbds_to_mhv,
    gen_random_crbds,
    gen_random_rmis,
    gen_rmis_to_mhe,
    gen_rmis_to_mhv,
    random_near_cluster,
)
from .graph import ContractError, happy_edge_count, happy_vertices
from .kernel import cubic_kernel, linear_kernel, clique_modulator_2approx
from .multiway import TrivialNoInstance, gmc_compress_to_mhv, mhv_to_gmc
from .oracles import DEFAULT_BUDGET, OracleBudgetError, brute_gmc, brute_mhe, brute_mhv, brute_nmc
from .verify import SUITES

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _verdict(yes: bool, opt) -> int:
    shown = "inf" if opt == float("inf") else int(opt)
    print(f"VERDICT {'yes' if yes else 'no'} OPT {shown}")
    return EXIT_YES if yes else EXIT_NO


def _write_coloring(path: str | None, coloring) -> None:
    if path:
        lines = [f"c {v} {col}" for v, col in enumerate(coloring.assignment, start=1)]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_solve_mhv(args) -> int:
    g = io.parse_happy(_read(args.file))
    if args.algo == "cluster-fpt":
        opt, witness = solve_mhv_cluster(g)
    else:
        opt, witness = brute_mhv(g, args.budget)
    assert len(happy_vertices(g, witness)) == opt
    _write_coloring(args.witness, witness)
    return _verdict(opt >= args.k, opt)


def cmd_solve_mhe(args) -> int:
    g = io.parse_happy(_read(args.file))
    opt, witness = brute_mhe(g, args.budget)
    assert happy_edge_count(g, witness) == opt
    _write_coloring(args.witness, witness)
    return _verdict(opt >= args.k, opt)


def cmd_solve_gmc(args) -> int:
    inst = io.parse_gmc(_read(args.file))
    k = args.k if args.k is not None else inst.budget
    if k is None:
        raise ContractError("no budget: pass -k or add a 'k' line to the file")
    cut, witness = brute_gmc(inst, args.budget)
    if args.witness:
        Path(args.witness).write_text("".join(f"d {v}\n" for v in sorted(witness)), encoding="utf-8")
    return _verdict(cut <= k, cut)


def cmd_solve_nmc(args) -> int:
    expr = io.parse_wexpr(_read(args.expr))
    terms = [int(x) for x in args.terminals.replace(",", " ").split()]
    res = solve_nmc_cw(expr, terms)
    if args.check:
        want = brute_nmc(eval_wexpr(expr).graph, terms, args.budget)
        if want != res.min_cut:
            print(f"error: dynamic program gave {res.min_cut}, exhaustive search {want}", file=sys.stderr)
            return EXIT_USAGE
    return _verdict(res.answer(args.k), res.min_cut)


def cmd_to_gmc(args) -> int:
    g = io.parse_happy(_read(args.file))
    try:
        inst = mhv_to_gmc(g, args.k)
    except TrivialNoInstance as exc:
        print(f"trivial no-instance: {exc}", file=sys.stderr)
        return EXIT_NO
    inst, old_of = inst.relabeled()
    header = "# vertex map (new old): " + " ".join(f"{a}:{b}" for a, b in sorted(old_of.items())) + "\n"
    _emit(header + io.serialize_gmc(inst), args.output)
    return EXIT_YES


def cmd_kernelize(args) -> int:
    g = io.parse_happy(_read(args.file))
    k = args.k
    if args.mode == "gmc-compress":
        out = gmc_compress_to_mhv(g)
    elif args.mode == "linear":
        out, k = linear_kernel(g, k, clique_modulator_2approx(g.graph))
    else:
        out, k, trace = cubic_kernel(g, k)
        if args.trace:
            Path(args.trace).write_text(trace.format(), encoding="utf-8")
    _emit(f"# k {k}\n" + io.serialize_happy(out), args.output)
    print(f"kernel: {g.n} -> {out.n} vertices, k {args.k} -> {k}", file=sys.stderr)
    return EXIT_YES


def cmd_gen(args) -> int:
    kind = args.kind
    if kind in ("rmis-mhv", "rmis-mhe"):
        if not args.source:
            raise ContractError(f"{kind} needs a source rmis file")
        inst = io.parse_rmis(_read(args.source))
        target = gen_rmis_to_mhv(inst) if kind == "rmis-mhv" else gen_rmis_to_mhe(inst, args.variant or "path")
    elif kind in ("crbds-mhv", "crbds-mhe"):
        if not args.source:
            raise ContractError(f"{kind} needs a source crbds file")
        inst = io.parse_crbds(_read(args.source))
        target = gen_crbds_to_mhv(inst) if kind == "crbds-mhv" else gen_crbds_to_mhe(inst, args.variant or "star")
    elif kind == "random-rmis":
        _emit(io.serialize_rmis(gen_random_rmis(args.k, args.q, args.x, args.seed)), args.output)
        return EXIT_YES
    elif kind == "random-crbds":
        inst = gen_random_crbds(args.k, args.per_color, args.nb, args.edge_prob, args.seed)
        _emit(io.serialize_crbds(inst), args.output)
        return EXIT_YES
    elif kind == "random-wexpr":
        _emit(io.serialize_wexpr(random_wexpr(args.n, args.w, args.seed)), args.output)
        return EXIT_YES
    else:
        raise ContractError(f"unknown generator {kind!r}")
    _emit(f"# k {target.k}\n" + io.serialize_happy(target.graph), args.output)
    print(f"k' = {target.k}", file=sys.stderr)
    return EXIT_YES


def _seed_range(text: str) -> range:
    if ":" in text:
        a, b = text.split(":", 1)
        return range(int(a), int(b))
    return range(int(text))


def cmd_verify(args) -> int:
    rep = SUITES[args.suite](_seed_range(args.seeds))
    print(rep.line())
    for f in rep.failures[:20]:
        print("  " + f)
    return EXIT_YES if rep.ok else EXIT_NO


def cmd_bench(args) -> int:
    print(f"{'n':>3} {'d':>2} {'ell':>3} {'fpt_ms':>8} {'brute_ms':>9} {'opt':>4}")
    for seed in range(args.seeds):
        n, d, ell = 6 + seed % 5, 1 + seed % 4, 2 + seed % 3
        g = random_near_cluster(n, ell, d, seed)
        s = find_cluster_modulator(g.graph)
        t0 = time.perf_counter()
        opt, _ = solve_mhv_cluster(g, s)
        t1 = time.perf_counter()
        brute_mhv(g)
        t2 = time.perf_counter()
        print(f"{n:>3} {len(s):>2} {ell:>3} {1e3 * (t1 - t0):>8.1f} {1e3 * (t2 - t1):>9.1f} {opt:>4}")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="happycoloring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def budgeted(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"maximum search size for exhaustive oracles (default {DEFAULT_BUDGET})")
        return sp

    sp = budgeted(sub.add_parser("solve-mhv", help="maximum happy vertices"))
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--algo", choices=["brute", "cluster-fpt"], default="brute")
    sp.add_argument("--witness")
    sp.set_defaults(func=cmd_solve_mhv)

    sp = budgeted(sub.add_parser("solve-mhe", help="maximum happy edges"))
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--witness")
    sp.set_defaults(func=cmd_solve_mhe)

    sp = budgeted(sub.add_parser("solve-gmc", help="group multiway cut"))
    sp.add_argument("file")
    sp.add_argument("-k", type=int)
    sp.add_argument("--witness")
    sp.set_defaults(func=cmd_solve_gmc)

    sp = budgeted(sub.add_parser("solve-nmc", help="node multiway cut over a clique-width expression"))
    sp.add_argument("--expr", required=True)
    sp.add_argument("--terminals", required=True, help="comma or space separated vertex ids")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--check", action="store_true", help="also run the exhaustive oracle")
    sp.set_defaults(func=cmd_solve_nmc)

    sp = sub.add_parser("to-gmc", help="reduce MHV to group multiway cut")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_to_gmc)

    sp = sub.add_parser("kernelize", help="shrink an MHV instance")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--mode", choices=["linear", "cubic", "gmc-compress"], required=True)
    sp.add_argument("-o", "--output")
    sp.add_argument("--trace", help="write the applied rules here (cubic mode)")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("gen", help="generate instances")
    sp.add_argument("kind", choices=["rmis-mhv", "rmis-mhe", "crbds-mhv", "crbds-mhe",
                                     "random-rmis", "random-crbds", "random-wexpr"])
    sp.add_argument("source", nargs="?")
    sp.add_argument("--variant", choices=["path", "triangle", "star", "cluster"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--x", type=int, default=1)
    sp.add_argument("--per-color", type=int, default=2)
    sp.add_argument("--nb", type=int, default=2)
    sp.add_argument("--edge-prob", type=float, default=0.5)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--w", type=int, default=3)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="run an oracle-equivalence suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--seeds", default="0:200", help="START:STOP or COUNT (default 0:200)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="timing table for the cluster solver against brute force")
    sp.add_argument("--seeds", type=int, default=10)
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cmd == "gen" and args.variant:
        allowed = {"rmis-mhe": ("path", "triangle"), "crbds-mhe": ("star", "cluster")}.get(args.kind, ())
        if args.variant not in allowed:
            print(f"error: --variant {args.variant} does not apply to {args.kind}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except OracleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (io.ParseError, ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
