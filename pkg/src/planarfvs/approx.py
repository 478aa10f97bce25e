"""Greedy-by-score FVS with reverse-order minimalization (Becker-Geiger style)."""

from __future__ import annotations

import heapq
import time
from typing import Iterable, Mapping

from .graph import FvsSolution, GraphError, MultiGraph, is_acyclic, minimal_scan


def _strip(g: MultiGraph, v: int, on_degree_change) -> None:
    """Delete ``v`` and cascade through neighbours whose degree falls to <= 1."""
    stack = [v]
    while stack:
        x = stack.pop()
        if x not in g:
            continue
        for u in g.delete_vertex(x):
            if u in g:
                if g.degree(u) <= 1:
                    stack.append(u)
                else:
                    on_degree_change(u)


def greedy_order(g: MultiGraph, weights: Mapping[int, float] | None = None) -> list[int]:
    """Selection order of the greedy phase; the selected set is feasible."""
    if weights is not None:
        for v in g:
            w = weights.get(v, 1.0)
            if not w > 0:
                raise GraphError(f"nonpositive weight {w!r} on vertex {v}")
    h = g.copy()
    order: list[int] = []
    heap: list[tuple[float, int]] = []

    def weight(v: int) -> float:
        return 1.0 if weights is None else float(weights.get(v, 1.0))

    def push(v: int) -> None:
        heapq.heappush(heap, (weight(v) / h.degree(v), v))

    for v in sorted(x for x in h if h.has_loop(x)):
        order.append(v)
        _strip(h, v, lambda u: None)
    for v in sorted(h):
        if v in h and h.degree(v) <= 1:
            _strip(h, v, lambda u: None)
    for v in h:
        push(v)
    while heap:
        s, v = heapq.heappop(heap)
        if v not in h or s != weight(v) / h.degree(v):
            continue
        order.append(v)
        _strip(h, v, push)
    return order


def two_approx(g: MultiGraph, weights: Mapping[int, float] | None = None) -> FvsSolution:
    t0 = time.perf_counter()
    order = greedy_order(g, weights)
    sol = minimal_scan(g, order, reversed(order))
    meta = {"algo": "2approx", "greedy": len(order), "elapsed": time.perf_counter() - t0}
    return FvsSolution(sol, meta)


def minimalize(g: MultiGraph, s: FvsSolution | Iterable[int], order: Iterable[int]) -> FvsSolution:
    """Try to drop each vertex of ``s`` in ``order``; vertices outside ``s`` are skipped."""
    vs = s.vertex_set if isinstance(s, FvsSolution) else set(s)
    meta = dict(s.meta) if isinstance(s, FvsSolution) else {}
    return FvsSolution(minimal_scan(g, vs, order), meta)


def is_minimal(g: MultiGraph, s: Iterable[int]) -> bool:
    vs = set(s)
    return is_acyclic(g, vs) and all(not is_acyclic(g, vs - {v}) for v in vs)
