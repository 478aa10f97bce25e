"""Hybrid reduce/greedy construction and exact-solver driven local search (HAS)."""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass, field
from typing import TextIO

from .approx import minimalize
from .exact import ExactConfig, Timeout, solve_exact
from .graph import DegreeIndex, FvsSolution, GraphError, MultiGraph, is_acyclic, verify_fvs
from .kernel import Marked, Reducer, lift_map

GREEDY = "greedy"


@dataclass
class HybridConfig:
    frequency: int = 41

    def __post_init__(self):
        if self.frequency < 1:
            raise ValueError("frequency must be >= 1")


def hybrid_solve(g: MultiGraph, cfg: HybridConfig | None = None) -> FvsSolution:
    """Alternate exhaustive reduction with batches of highest-degree removals."""
    cfg = cfg or HybridConfig()
    t0 = time.perf_counter()
    h = g.copy()
    red = Reducer(h)
    index = DegreeIndex(h)
    red.on_touch = index.touch
    greedy = 0
    while True:
        red.run()
        if h.n == 0:
            break
        for _ in range(cfg.frequency):
            # after a reduction fixpoint every vertex has degree >= 3
            v = index.pop_max(min_degree=3)
            if v is None:
                break
            red.take(v, GREEDY)
            greedy += 1
    tags = lift_map(red.trace, (), lambda i, ev: i if ev.rule == GREEDY else None)
    sol = set(tags)
    if not is_acyclic(g, sol):
        raise GraphError("internal error: hybrid solution is infeasible")
    scan = sorted((v for v, i in tags.items() if i is not None), key=lambda v: tags[v], reverse=True)
    sol = minimalize(g, sol, scan).vertex_set
    meta = {
        "algo": "hybrid",
        "frequency": cfg.frequency,
        "greedy": greedy,
        "marked": sum(1 for e in red.trace.events if isinstance(e, Marked) and e.rule != GREEDY),
        "elapsed": time.perf_counter() - t0,
    }
    return FvsSolution(sol, meta)


@dataclass
class HasConfig:
    t_min: int = 3
    t_max: int = 30
    t_step: int = 3
    stall_limit: int = 6
    budget: float = 15.0  # seconds per exact call
    seed: int = 0
    passes: int = 1
    # Time-based timeouts make the round log depend on machine speed. When
    # deterministic, the budget is charged in search nodes at node_rate per
    # second instead, with a loose time guard of guard_factor * budget.
    deterministic: bool = True
    node_rate: int = 5000
    guard_factor: float = 10.0

    def __post_init__(self):
        if not 1 <= self.t_min <= self.t_max:
            raise ValueError("need 1 <= t_min <= t_max")
        if self.t_step < 1 or self.stall_limit < 1 or self.passes < 1:
            raise ValueError("t_step, stall_limit and passes must be >= 1")
        if not self.budget > 0:
            raise ValueError("budget must be positive")
        if self.node_rate < 1 or not self.guard_factor >= 1:
            raise ValueError("node_rate must be >= 1 and guard_factor >= 1")


@dataclass
class HasRound:
    round: int
    t: int
    x: int
    y: int | None  # None on timeout
    accepted: bool
    size: int  # solution size after the round
    elapsed: float

    def row(self, timing: bool = True) -> list:
        out = [self.round, self.t, self.x, "timeout" if self.y is None else self.y, int(self.accepted), self.size]
        if timing:
            out.append(f"{self.elapsed:.3f}")
        return out


LOG_COLUMNS = ["round", "t", "x", "y", "accepted", "size", "elapsed"]


def write_round_log(rounds: list[HasRound], fh: TextIO, timing: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(LOG_COLUMNS if timing else LOG_COLUMNS[:-1])
    for r in rounds:
        w.writerow(r.row(timing))


def round_log_text(rounds: list[HasRound], timing: bool = False) -> str:
    buf = io.StringIO()
    write_round_log(rounds, buf, timing)
    return buf.getvalue()


@dataclass
class HasResult:
    solution: FvsSolution
    rounds: list[HasRound] = field(default_factory=list)


def has_search(g: MultiGraph, initial: FvsSolution, cfg: HasConfig | None = None, on_accept=None) -> HasResult:
    """Repeatedly re-solve a random 1/t share of the solution exactly.

    ``on_accept(round_index, solution_set)`` is called after every accepted round.
    """
    cfg = cfg or HasConfig()
    t0 = time.perf_counter()
    u = set(initial.vertex_set)
    if not verify_fvs(g, u):
        raise GraphError("initial solution is not a feasible FVS")
    rng = random.Random(cfg.seed)
    rounds: list[HasRound] = []
    if cfg.deterministic:
        exact_cfg = ExactConfig(cfg.budget * cfg.guard_factor, node_limit=max(1, int(cfg.budget * cfg.node_rate)))
    else:
        exact_cfg = ExactConfig(cfg.budget)
    for _ in range(cfg.passes):
        t = cfg.t_min
        while t <= cfg.t_max:
            stall = 0
            while stall < cfg.stall_limit:
                r0 = time.perf_counter()
                k = max(1, len(u) // t)
                x = rng.sample(sorted(u), k)
                keep = u.difference(x)
                try:
                    y = solve_exact(g.without(keep), exact_cfg).vertex_set
                except Timeout:
                    y = None
                accepted = y is not None and len(y) < k
                if accepted:
                    u = keep | y
                    if not verify_fvs(g, u):
                        raise GraphError("internal error: HAS produced an infeasible state")
                    if on_accept:
                        on_accept(len(rounds), frozenset(u))
                    stall = 0
                else:
                    stall += 1
                rounds.append(
                    HasRound(len(rounds), t, k, None if y is None else len(y), accepted, len(u), time.perf_counter() - r0)
                )
            t += cfg.t_step
    meta = {
        "algo": "has",
        "seed": cfg.seed,
        "rounds": len(rounds),
        "initial": len(initial),
        "elapsed": time.perf_counter() - t0,
    }
    return HasResult(FvsSolution(u, meta), rounds)


def has_solve(g: MultiGraph, initial: FvsSolution, cfg: HasConfig | None = None) -> FvsSolution:
    return has_search(g, initial, cfg).solution
