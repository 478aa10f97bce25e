"""Separator-based approximation scheme: kernel, r-decomposition, exact leaves, lift.

The error parameter is never set directly. A leaf cap ``r`` corresponds to
``eps = c1 * c2 / sqrt(r)`` where ``c1`` is the kernel constant and ``c2`` the
separator constant; ``c2`` is measured per run and reported in the meta.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .approx import minimalize
from .exact import ExactConfig, Timeout, solve_exact
from .graph import FvsSolution, GraphError, MultiGraph, is_acyclic
from .kernel import Reducer, ReductionTrace, kernelize, lift_map
from .separator import DecompNode, DecompositionTree, decompose, find_separator

VARIANTS = ("vanilla", "minimal", "optimized")


class PtasLeafError(GraphError):
    pass


@dataclass
class PtasConfig:
    r: int = 60
    variant: str = "vanilla"
    leaf_budget: float = 15.0  # seconds per leaf solve

    def __post_init__(self):
        if self.r < 3:
            raise ValueError("r must be at least 3")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if not self.leaf_budget > 0:
            raise ValueError("leaf_budget must be positive")


def _solve_leaf(g: MultiGraph, verts, cfg: PtasConfig) -> set[int]:
    sub = g.subgraph(verts)
    if is_acyclic(sub):
        return set()
    try:
        return set(solve_exact(sub, ExactConfig(cfg.leaf_budget)).vertex_set)
    except Timeout:
        raise PtasLeafError(f"leaf unsolved at r={cfg.r}") from None


def _lift_tagged(trace: ReductionTrace, tagged: dict[int, int | None]) -> dict[int, int | None]:
    """Lift a solution whose vertices carry their separator discovery rank (None otherwise)."""
    return {v: (tagged[src] if src is not None else None) for v, src in lift_map(trace, tagged).items()}


def ptas_solve(g: MultiGraph, cfg: PtasConfig | None = None) -> FvsSolution:
    cfg = cfg or PtasConfig()
    t0 = time.perf_counter()
    ko = kernelize(g)
    h = ko.kernel
    if cfg.variant == "optimized":
        root, tagged = _optimized(h, cfg)
        tree = DecompositionTree(root, cfg.r, h.n)
    else:
        tree = decompose(h, cfg.r)
        tagged = {}
        for leaf in tree.leaves():
            for v in _solve_leaf(h, leaf.vertices, cfg):
                tagged[v] = None
        rank = 0
        for sep in tree.separators():
            for v in sep:
                tagged[v] = rank
                rank += 1
    final = _lift_tagged(ko.trace, tagged)
    sol = set(final)
    if not is_acyclic(g, sol):
        raise GraphError("internal error: lifted PTAS solution is infeasible")
    meta = {
        "algo": "ptas",
        "r": cfg.r,
        "variant": cfg.variant,
        "kernel_n": h.n,
        "separator_total": tree.separator_total,
        "c2": tree.c2,
        "leaves": len(tree.leaves()),
    }
    if cfg.variant != "vanilla":
        # separators are scanned in reverse discovery order
        scan = sorted((v for v, k in final.items() if k is not None), key=lambda v: final[v], reverse=True)
        before = len(sol)
        sol = set(minimalize(g, sol, scan).vertex_set)
        meta["minimalized"] = before - len(sol)
    meta["elapsed"] = time.perf_counter() - t0
    return FvsSolution(sol, meta)


def _optimized(h: MultiGraph, cfg: PtasConfig) -> tuple[DecompNode, dict[int, int | None]]:
    """Decompose with re-kernelization after every separator removal.

    Children are solved and lifted through their parent's trace before the
    parent's separator joins the solution.
    """
    counter = [0]
    top = [h.max_id]  # id allocator shared by every reducer in the tree

    def solve(part: MultiGraph) -> tuple[DecompNode, dict[int, int | None]]:
        node = DecompNode(frozenset(part))
        if part.n <= cfg.r:
            return node, {v: None for v in _solve_leaf(part, list(part), cfg)}
        comps = part.components()
        if len(comps) > 1:
            node.phase = "split"
            out: dict[int, int | None] = {}
            for c in sorted(comps, key=min):
                child, sol = solve(part.subgraph(c))
                node.children.append(child)
                out.update(sol)
            return node, out
        res = find_separator(part)
        node.separator = res.separator
        node.phase = res.phase
        first = counter[0]
        counter[0] += len(res.separator)
        rest = part.without(res.separator)
        rest.reserve_ids(top[0])
        red = Reducer(rest)
        red.run()
        top[0] = rest.max_id
        node.trace = red.trace
        node.marked = red.trace.marked
        out = {}
        for c in sorted(rest.components(), key=min):
            child, sol = solve(rest.subgraph(c))
            node.children.append(child)
            out.update(sol)
        out = _lift_tagged(red.trace, out)
        for i, v in enumerate(res.separator):
            out[v] = first + i
        return node, out

    return solve(h.copy())


@dataclass
class SweepResult:
    best: FvsSolution
    best_r: int
    largest_r: int
    sizes: dict[int, int] = field(default_factory=dict)


def sweep_r(
    g: MultiGraph,
    r_start: int = 60,
    r_step: int = 5,
    variant: str = "vanilla",
    leaf_budget: float = 15.0,
    r_max: int | None = None,
) -> SweepResult:
    """Increase r until a leaf cannot be solved; keep the smallest solution."""
    if r_start < 3 or r_step < 1:
        raise ValueError("need r_start >= 3 and r_step >= 1")
    kernel_n = kernelize(g).kernel.n
    best = best_r = last = None
    sizes: dict[int, int] = {}
    r = r_start
    while r_max is None or r <= r_max:
        try:
            sol = ptas_solve(g, PtasConfig(r, variant, leaf_budget))
        except PtasLeafError:
            break
        sizes[r] = len(sol)
        last = r
        if best is None or len(sol) < len(best):
            best, best_r = sol, r
        if r >= kernel_n:
            break  # a single leaf already holds the whole kernel
        r += r_step
    if best is None:
        raise PtasLeafError(f"leaf unsolved at r={r_start}")
    return SweepResult(best, best_r, last, sizes)
