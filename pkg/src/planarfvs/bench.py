"""Experiment orchestration: suites of instances x algorithms -> CSV rows."""

from __future__ import annotations

import csv
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .approx import two_approx
from .dimacs import load_dimacs
from .exact import ExactConfig, solve_exact
from .generators import gen_grid, gen_random_planar, gen_triangu
from .graph import FvsSolution, MultiGraph, load_edgelist, read_edgelist, verify_fvs
from .heuristics import HasConfig, HybridConfig, has_search, hybrid_solve
from .ptas import PtasConfig, ptas_solve

CSV_COLUMNS = ["instance", "n", "m", "algo", "params", "seed", "size", "feasible", "elapsed_ms", "normalized"]
ALGORITHMS = ("2approx", "kernel-exact", "ptas", "hybrid", "has")
BASELINE = "2approx"


@dataclass
class RunReport:
    instance: str
    n: int
    m: int
    algo: str
    params: str
    seed: int | None
    size: float | None
    feasible: bool
    elapsed_ms: float
    normalized: float | None = None
    error: str | None = None
    solution: FvsSolution | None = None

    def row(self) -> list:
        def num(x, fmt):
            return "" if x is None else format(x, fmt)

        size = "" if self.size is None else (str(self.size) if isinstance(self.size, int) else f"{self.size:.1f}")
        return [
            self.instance,
            self.n,
            self.m,
            self.algo,
            self.params,
            "" if self.seed is None else self.seed,
            size,
            "true" if self.feasible else "false",
            num(self.elapsed_ms, ".1f"),
            num(self.normalized, ".4f"),
        ]


def write_csv(reports: Iterable[RunReport], fh: TextIO) -> int:
    """Write the header and one row per report; returns the number of rows."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    count = 0
    for r in reports:
        w.writerow(r.row())
        fh.flush()
        count += 1
    return count


def format_params(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def run_algorithm(g: MultiGraph, algo: str, params: dict, seed: int | None = None) -> FvsSolution:
    """Dispatch one solver by its CLI name; ``params`` use CLI option names."""
    budget = params.get("budget_ms")
    if algo == "2approx":
        return two_approx(g)
    if algo in ("kernel-exact", "exact"):
        return solve_exact(g, ExactConfig(budget / 1000 if budget else 15.0))
    if algo == "ptas":
        cfg = PtasConfig(int(params.get("r", 60)), params.get("variant", "vanilla"), budget / 1000 if budget else 15.0)
        return ptas_solve(g, cfg)
    if algo == "hybrid":
        return hybrid_solve(g, HybridConfig(int(params.get("freq", 41))))
    if algo == "has":
        start = hybrid_solve(g, HybridConfig(int(params.get("freq", 41))))
        cfg = HasConfig(
            t_min=int(params.get("t_min", 3)),
            t_max=int(params.get("t_max", 30)),
            t_step=int(params.get("t_step", 3)),
            stall_limit=int(params.get("stall", 6)),
            budget=budget / 1000 if budget else 15.0,
            seed=0 if seed is None else int(seed),
        )
        res = has_search(g, start, cfg)
        res.solution.meta["round_log"] = res.rounds
        return res.solution
    raise ValueError(f"unknown algorithm {algo!r}")


def measure(name: str, g: MultiGraph, algo: str, params: dict, seed: int | None = None) -> RunReport:
    """Run one solver and verify its output independently; errors become failed rows."""
    t0 = time.perf_counter()
    try:
        sol = run_algorithm(g, algo, params, seed)
    except Exception as exc:  # a failed run is data, not a crash
        ms = (time.perf_counter() - t0) * 1000
        return RunReport(name, g.n, g.m, algo, format_params(params), seed, None, False, ms, error=f"{type(exc).__name__}: {exc}")
    ms = (time.perf_counter() - t0) * 1000
    try:
        ok = verify_fvs(g, sol)
    except Exception:
        ok = False
    return RunReport(name, g.n, g.m, algo, format_params(params), seed, len(sol), ok, ms, solution=sol)


# -- suites ------------------------------------------------------------------------

def load_suite(path: str) -> dict:
    with open(path, "rb") as fh:
        data = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        return tomllib.loads(data.decode())
    return json.loads(data)


def build_instance(spec: dict, base_dir: str = ".") -> tuple[str, MultiGraph]:
    kind = spec.get("gen")
    if kind == "grid":
        g = gen_grid(int(spec["rows"]), int(spec["cols"]))
        name = spec.get("name", f"grid{spec['rows']}x{spec['cols']}")
    elif kind == "random-planar":
        g = gen_random_planar(int(spec["n"]), int(spec["m"]), int(spec.get("seed", 0)))
        name = spec.get("name", f"random{spec['n']}_{spec['m']}_s{spec.get('seed', 0)}")
    elif kind == "triangu":
        g = gen_triangu(int(spec["n"]), int(spec.get("seed", 0)))
        name = spec.get("name", f"triangu{spec['n']}_s{spec.get('seed', 0)}")
    elif "edges" in spec:
        g = MultiGraph.from_edges([tuple(e) for e in spec["edges"]], spec.get("vertices", ()))
        name = spec.get("name", "inline")
    elif "path" in spec:
        path = os.path.join(base_dir, spec["path"])
        if spec.get("format", "edgelist") == "dimacs":
            g = load_dimacs(path, os.path.join(base_dir, spec["coords"]))
        else:
            g = load_edgelist(path)
        name = spec.get("name", os.path.basename(path))
    elif "text" in spec:
        g = read_edgelist(spec["text"])
        name = spec.get("name", "inline")
    else:
        raise ValueError(f"cannot build instance from {spec!r}")
    return name, g


def run_benchmark(suite: dict, base_dir: str = ".", log: TextIO | None = None) -> Iterator[RunReport]:
    """Yield one report per (instance, algorithm, seed), plus HAS avg/min rows.

    The suite holds ``instances`` (generator specs, inline edges or file paths)
    and ``algorithms`` (``{"algo": name, ...params}``; HAS takes ``seeds``).
    Sizes are normalized by the 2approx size of the same instance.
    """
    log = log if log is not None else sys.stderr
    for spec in suite.get("instances", []):
        try:
            name, g = build_instance(spec, base_dir)
        except Exception as exc:
            print(f"instance {spec!r} failed: {exc}", file=log)
            continue
        base = len(two_approx(g))
        for entry in suite.get("algorithms", []):
            entry = dict(entry)
            algo = entry.pop("algo")
            seeds = entry.pop("seeds", None)
            if algo == "has":
                seeds = seeds if seeds is not None else [entry.pop("seed", 0)]
                runs = []
                for s in seeds:
                    rep = _finish(measure(name, g, algo, entry, s), base, log)
                    runs.append(rep)
                    yield rep
                ok = [r for r in runs if r.size is not None]
                if len(runs) > 1 and ok:
                    sizes = [r.size for r in ok]
                    feas = all(r.feasible for r in runs)
                    ms = statistics.fmean(r.elapsed_ms for r in ok)
                    avg, low = statistics.fmean(sizes), min(sizes)
                    params = format_params(entry)
                    yield RunReport(name, g.n, g.m, "has(avg)", params, None, avg, feas, ms, avg / base if base else None)
                    yield RunReport(name, g.n, g.m, "has(min)", params, None, low, feas, ms, low / base if base else None)
            else:
                seed = entry.pop("seed", None)
                yield _finish(measure(name, g, algo, entry, seed), base, log)


def _finish(rep: RunReport, base: int, log: TextIO) -> RunReport:
    if rep.size is not None:
        rep.normalized = rep.size / base if base else (1.0 if rep.size == 0 else None)
    if rep.error:
        print(f"{rep.instance} {rep.algo}: {rep.error}", file=log)
    return rep
