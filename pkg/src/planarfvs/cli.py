"""Command line interface: solve, gen, verify, lower-bound, bench."""

from __future__ import annotations

import argparse
import os
import sys

from .bench import ALGORITHMS, RunReport, _finish, load_suite, measure, run_benchmark, write_csv
from .approx import two_approx
from .bounds import grid_lower_bound
from .dimacs import load_dimacs
from .generators import gen_grid, gen_random_planar, gen_triangu
from .graph import GraphError, load_edgelist, read_edgelist, verify_fvs, write_edgelist
from .heuristics import write_round_log


def _load_graph(args):
    if args.format == "dimacs":
        if not args.input or args.input == "-" or not args.coords:
            raise GraphError("dimacs input needs --input <file.gr> and --coords <file.co>")
        return os.path.basename(args.input), load_dimacs(args.input, args.coords)
    if not args.input or args.input == "-":
        return "stdin", read_edgelist(sys.stdin)
    return os.path.basename(args.input), load_edgelist(args.input)


def _open_out(path):
    if not path or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def cmd_solve(args) -> int:
    name, g = _load_graph(args)
    params = {}
    if args.algo == "ptas":
        params.update(r=args.r, variant=args.variant)
    if args.algo in ("hybrid", "has"):
        params["freq"] = args.freq
    if args.algo == "has":
        params.update(t_min=args.t_min, t_max=args.t_max, t_step=args.t_step, stall=args.stall)
    if args.budget_ms is not None and args.algo in ("kernel-exact", "ptas", "has"):
        params["budget_ms"] = args.budget_ms
    seed = args.seed if args.algo == "has" else None
    rep: RunReport = measure(name, g, args.algo, params, seed)
    _finish(rep, len(two_approx(g)), sys.stderr)
    fh, close = _open_out(args.out)
    try:
        write_csv([rep], fh)
    finally:
        if close:
            fh.close()
    if rep.solution is not None:
        if args.solution_out:
            with open(args.solution_out, "w") as sf:
                sf.write("\n".join(str(v) for v in sorted(rep.solution.vertex_set)) + "\n")
        if args.round_log and "round_log" in rep.solution.meta:
            with open(args.round_log, "w") as lf:
                write_round_log(rep.solution.meta["round_log"], lf)
        if args.dump:
            _dump(g, args, rep)
    if rep.error:
        return 2
    return 0 if rep.feasible else 1


def _dump(g, args, rep) -> None:
    from .kernel import kernelize
    from .separator import decompose

    ko = kernelize(g)
    print(f"kernel: n={ko.kernel.n} m={ko.kernel.m} marked={ko.marked_count}", file=sys.stderr)
    print(ko.trace.dump(), file=sys.stderr)
    if args.algo == "ptas" and ko.kernel.n:
        print(decompose(ko.kernel, args.r).dump(), file=sys.stderr)


def cmd_gen(args) -> int:
    if args.family == "grid":
        g = gen_grid(args.rows, args.cols)
        note = f"grid {args.rows}x{args.cols}"
    elif args.family == "random-planar":
        g = gen_random_planar(args.n, args.m, args.seed)
        note = f"random-planar n={args.n} m={args.m} seed={args.seed}"
    else:
        g = gen_triangu(args.n, args.seed)
        note = f"triangu n={args.n} seed={args.seed}"
    fh, close = _open_out(args.out)
    try:
        write_edgelist(g, fh, note)
    finally:
        if close:
            fh.close()
    return 0


def _read_solution(path: str) -> list[int]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0]
            out.extend(int(tok) for tok in line.replace(",", " ").split())
    return out


def cmd_verify(args) -> int:
    _, g = _load_graph(args)
    sol = _read_solution(args.solution)
    ok = verify_fvs(g, sol)
    print(f"{'feasible' if ok else 'infeasible'} size={len(set(sol))}")
    return 0 if ok else 1


def cmd_lower_bound(args) -> int:
    print(grid_lower_bound(args.rows, args.cols))
    return 0


def cmd_bench(args) -> int:
    suite = load_suite(args.suite)
    fh, close = _open_out(args.out)
    failed = 0
    try:
        def stream():
            nonlocal failed
            for rep in run_benchmark(suite, os.path.dirname(os.path.abspath(args.suite))):
                failed += not rep.feasible
                yield rep

        write_csv(stream(), fh)
    finally:
        if close:
            fh.close()
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarfvs", description="Feedback vertex set toolkit for planar graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("--input", default="-", help="edge list or .gr file (default: stdin)")
        sp.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
        sp.add_argument("--coords", help=".co coordinate file for dimacs input")

    s = sub.add_parser("solve", help="solve one instance and emit a CSV row")
    graph_input(s)
    s.add_argument("--algo", choices=ALGORITHMS, required=True)
    s.add_argument("--r", type=int, default=60)
    s.add_argument("--variant", choices=("vanilla", "minimal", "optimized"), default="vanilla")
    s.add_argument("--budget-ms", type=int, default=None)
    s.add_argument("--freq", type=int, default=41)
    s.add_argument("--t-min", type=int, default=3)
    s.add_argument("--t-max", type=int, default=30)
    s.add_argument("--t-step", type=int, default=3)
    s.add_argument("--stall", type=int, default=6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default="-", help="CSV destination (default: stdout)")
    s.add_argument("--solution-out", help="write the solution vertex ids here")
    s.add_argument("--round-log", help="HAS only: write the per-round CSV log here")
    s.add_argument("--dump", action="store_true", help="print kernel rule counts (and the decomposition for ptas) to stderr")
    s.set_defaults(func=cmd_solve)

    gp = sub.add_parser("gen", help="generate an instance as an edge list")
    gsub = gp.add_subparsers(dest="family", required=True)
    gg = gsub.add_parser("grid")
    gg.add_argument("--rows", type=int, required=True)
    gg.add_argument("--cols", type=int, required=True)
    gr = gsub.add_parser("random-planar")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--seed", type=int, default=0)
    gt = gsub.add_parser("triangu")
    gt.add_argument("--n", type=int, required=True)
    gt.add_argument("--seed", type=int, default=0)
    for x in (gg, gr, gt):
        x.add_argument("--out", default="-")
        x.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check that a vertex set is a feedback vertex set")
    graph_input(v)
    v.add_argument("--solution", required=True)
    v.set_defaults(func=cmd_verify)

    lb = sub.add_parser("lower-bound", help="closed-form lower bounds")
    lsub = lb.add_subparsers(dest="family", required=True)
    lg = lsub.add_parser("grid")
    lg.add_argument("--rows", type=int, required=True)
    lg.add_argument("--cols", type=int, required=True)
    lg.set_defaults(func=cmd_lower_bound)

    b = sub.add_parser("bench", help="run a JSON/TOML suite and emit CSV")
    b.add_argument("--suite", required=True)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
