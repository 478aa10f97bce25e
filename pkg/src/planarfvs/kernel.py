"""Local reduction rules for FVS with a replayable trace for lifting.

Rules fall into three kinds:

* neutral rewrites that keep the optimum (1, 2, 3, 7),
* rules that put a vertex into the solution and delete it (4, 5, 6, 10, 11),
* structured rewrites that swap original vertices for a fresh one (8, 9).

Rule summary (``x``/``y`` fresh where noted):

1. delete a vertex of degree <= 1
2. drop an edge copy beyond multiplicity two
3. bypass a degree-2 vertex with two distinct neighbours
4. take a vertex carrying a self-loop
5. a degree-2 vertex whose two edges go to ``u``: take ``u``
6. double edge ``u=v`` with ``deg(v) == 3``: take ``u``
7. degree-3 ``x`` adjacent to both ends of a double edge ``u=w`` and to ``t``,
   with ``t`` already adjacent to ``u`` or ``w``: delete ``x``, add ``t-u`` and ``t-w``
8. degree-3 ``v2`` adjacent to ``v1``, ``w1``, ``w2`` with ``v1=w1`` double and
   ``deg(v1) >= 4``: replace ``v1, v2`` by fresh ``y`` (``y=w1`` double, ``y-w2``,
   ``y`` inherits the other edges of ``v1``) and add ``w1-w2``; ``y`` lifts to ``v1``
9. adjacent degree-3 vertices ``a, b`` with common neighbours ``p != c``: replace
   them by fresh ``y`` with ``y=p`` and ``y=c`` double plus an edge ``p-c``; ``y``
   lifts to ``a``
10. a vertex whose only neighbours ``u, w`` are all joined by double edges
    (including ``u=w``): take ``u`` and ``w``
11. a connected component of at most six vertices: solve it by enumeration

Candidate bookkeeping follows a three-queue discipline: rules 1-5 run to a
fixpoint first, then queued double-edge pairs are checked for rule 6, then
queued vertices for rules 7-11. Every application re-queues the touched area.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .graph import FvsSolution, GraphError, MultiGraph, is_acyclic

SMALL_COMPONENT = 6


@dataclass(frozen=True)
class Marked:
    vertex: int
    rule: int | str


@dataclass(frozen=True)
class Neutral:
    rule: int


@dataclass(frozen=True)
class Structured:
    rule: int
    originals: tuple[int, ...]
    introduced: tuple[int, ...]
    substitute: int  # original that replaces the introduced vertex in a solution


@dataclass
class ReductionTrace:
    events: list = field(default_factory=list)
    substitutes: dict[int, int] = field(default_factory=dict)  # introduced -> original
    first_introduced: int = 0

    @property
    def marked(self) -> list[int]:
        return [e.vertex for e in self.events if isinstance(e, Marked)]

    @property
    def marked_count(self) -> int:
        return sum(1 for e in self.events if isinstance(e, Marked))

    def rule_counts(self) -> Counter:
        c: Counter = Counter()
        for e in self.events:
            c[e.rule] += 1
        return c

    def dump(self) -> str:
        return "\n".join(f"rule {k}: {v}" for k, v in sorted(self.rule_counts().items(), key=lambda kv: str(kv[0])))


@dataclass
class KernelOutput:
    kernel: MultiGraph
    trace: ReductionTrace

    @property
    def marked_count(self) -> int:
        return self.trace.marked_count


class _Queue:
    """Deduplicating min-heap of candidates."""

    def __init__(self, items: Iterable = ()):
        self._set = set(items)
        self._heap = list(self._set)
        heapq.heapify(self._heap)

    def push(self, x) -> None:
        if x not in self._set:
            self._set.add(x)
            heapq.heappush(self._heap, x)

    def pop(self):
        x = heapq.heappop(self._heap)
        self._set.discard(x)
        return x

    def __bool__(self) -> bool:
        return bool(self._heap)


class Reducer:
    """Applies rules 1-11 exhaustively to a graph it owns and mutates."""

    def __init__(self, g: MultiGraph, trace: ReductionTrace | None = None):
        self.g = g
        self.trace = trace if trace is not None else ReductionTrace(first_introduced=g.max_id + 1)
        self.dirty = _Queue(g)
        self.q1 = _Queue(self._double_pairs(g))
        self.q2 = _Queue(g)
        self.on_touch = None  # optional callback(v) used by the hybrid heuristic
        self._discarded = g.discarded_edges

    @staticmethod
    def _double_pairs(g: MultiGraph) -> list[tuple[int, int]]:
        return [(u, v) for u in g for v, k in g.adjacency(u).items() if u < v and k == 2]

    # -- bookkeeping ------------------------------------------------------
    def _note_discards(self) -> None:
        d = self.g.discarded_edges - self._discarded
        if d:
            self.trace.events.extend(Neutral(2) for _ in range(d))
            self._discarded = self.g.discarded_edges

    def touch(self, vs: Iterable[int]) -> None:
        g = self.g
        for v in vs:
            if v not in g:
                continue
            self.dirty.push(v)
            self.q2.push(v)
            if self.on_touch:
                self.on_touch(v)
            for u, k in g.adjacency(v).items():
                if u == v:
                    continue
                self.dirty.push(u)
                self.q2.push(u)
                if k == 2:
                    self.q1.push((min(u, v), max(u, v)))

    def take(self, v: int, rule: int | str) -> None:
        nbrs = self.g.delete_vertex(v)
        self.trace.events.append(Marked(v, rule))
        self.touch(nbrs)

    # -- driver -----------------------------------------------------------
    def run(self) -> None:
        g = self.g
        while True:
            if self.dirty:
                v = self.dirty.pop()
                if v in g:
                    self._simple(v)
            elif self.q1:
                u, w = self.q1.pop()
                if u in g and w in g and g.multiplicity(u, w) == 2:
                    self._rule6(u, w)
            elif self.q2:
                v = self.q2.pop()
                if v in g:
                    self._complex(v)
            else:
                break
        self._note_discards()

    def _simple(self, v: int) -> bool:
        g = self.g
        d = g.degree(v)
        if d <= 1:
            nbrs = g.delete_vertex(v)
            self.trace.events.append(Neutral(1))
            self.touch(nbrs)
            return True
        loop = g.has_loop(v)
        if d == 2 and not loop:
            adj = g.adjacency(v)
            if len(adj) == 2:
                a, b = adj
                g.contract_degree_two(v)
                self._note_discards()
                self.trace.events.append(Neutral(3))
                self.touch((a, b))
                return True
        if loop:
            self.take(v, 4)
            return True
        if d == 2:
            (u,) = g.adjacency(v)
            self.take(u, 5)
            return True
        return False

    def _rule6(self, u: int, w: int) -> bool:
        g = self.g
        if g.degree(w) == 3:
            self.take(u, 6)
            return True
        if g.degree(u) == 3:
            self.take(w, 6)
            return True
        return False

    def _complex(self, v: int) -> bool:
        return self._rule7(v) or self._rule8(v) or self._rule9(v) or self._rule10(v) or self._rule11(v)

    def _deg3_simple(self, x: int) -> list[int] | None:
        g = self.g
        if g.degree(x) != 3:
            return None
        adj = g.adjacency(x)
        if len(adj) != 3 or x in adj:
            return None
        return sorted(adj)

    def _double_among(self, nbrs: list[int]) -> tuple[int, int, int] | None:
        g = self.g
        for a, b in itertools.combinations(nbrs, 2):
            if g.multiplicity(a, b) == 2:
                (t,) = [c for c in nbrs if c != a and c != b]
                return a, b, t
        return None

    def _rule7(self, x: int) -> bool:
        nbrs = self._deg3_simple(x)
        if nbrs is None:
            return False
        found = self._double_among(nbrs)
        if found is None:
            return False
        u, w, t = found
        g = self.g
        if g.multiplicity(t, u) == 0 and g.multiplicity(t, w) == 0:
            return False
        g.delete_vertex(x)
        g.add_edge(t, u)
        g.add_edge(t, w)
        self._note_discards()
        self.trace.events.append(Neutral(7))
        self.touch((t, u, w))
        return True

    def _rule8(self, v2: int) -> bool:
        nbrs = self._deg3_simple(v2)
        if nbrs is None:
            return False
        found = self._double_among(nbrs)
        if found is None:
            return False
        a, b, w2 = found
        g = self.g
        if g.degree(a) < 4 or g.degree(b) < 4:
            return False
        # the lower-degree endpoint is replaced
        v1, w1 = (a, b) if (g.degree(a), a) <= (g.degree(b), b) else (b, a)
        inherit = [(x, k) for x, k in g.adjacency(v1).items() if x not in (v2, w1)]
        g.delete_vertex(v2)
        g.delete_vertex(v1)
        y = g.add_vertex()
        g.add_edge(y, w1)
        g.add_edge(y, w1)
        g.add_edge(y, w2)
        for x, k in inherit:
            for _ in range(k):
                g.add_edge(y, x if x != v1 else y)
        g.add_edge(w1, w2)
        self._note_discards()
        self.trace.events.append(Structured(8, (v1, v2, w1, w2), (y,), v1))
        self.trace.substitutes[y] = v1
        self.touch([y, w1, w2] + [x for x, _ in inherit])
        return True

    def _rule9(self, a: int) -> bool:
        nbrs = self._deg3_simple(a)
        if nbrs is None:
            return False
        g = self.g
        for b in nbrs:
            nb = self._deg3_simple(b)
            if nb is None or a not in nb:
                continue
            common = [x for x in nbrs if x != b]
            if sorted(common + [a]) != nb:
                continue
            p, c = common
            g.delete_vertex(a)
            g.delete_vertex(b)
            y = g.add_vertex()
            for _ in range(2):
                g.add_edge(y, p)
                g.add_edge(y, c)
            g.add_edge(p, c)
            self._note_discards()
            self.trace.events.append(Structured(9, (a, b, p, c), (y,), a))
            self.trace.substitutes[y] = a
            self.touch((y, p, c))
            return True
        return False

    def _rule10(self, v: int) -> bool:
        g = self.g
        adj = g.adjacency(v)
        if len(adj) != 2 or v in adj or any(k != 2 for k in adj.values()):
            return False
        u, w = sorted(adj)
        if g.multiplicity(u, w) != 2:
            return False
        self.take(u, 10)
        self.take(w, 10)
        return True

    def _rule11(self, v: int) -> bool:
        g = self.g
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    if len(comp) > SMALL_COMPONENT:
                        return False
                    stack.append(y)
        sub = g.subgraph(comp)
        best = _enumerate_opt(sub)
        for x in sorted(comp):
            if x in best:
                g.delete_vertex(x)
                self.trace.events.append(Marked(x, 11))
        for x in sorted(comp):
            if x in g:
                g.delete_vertex(x)
                self.trace.events.append(Neutral(11))
        return True


def _enumerate_opt(g: MultiGraph) -> set[int]:
    verts = sorted(g)
    for k in range(len(verts) + 1):
        for cand in itertools.combinations(verts, k):
            if is_acyclic(g, cand):
                return set(cand)
    return set(verts)


def kernelize(g: MultiGraph) -> KernelOutput:
    h = g.copy()
    red = Reducer(h)
    red.run()
    return KernelOutput(h, red.trace)


def lift_map(trace: ReductionTrace, solution: Iterable[int], mark_tag=None) -> dict:
    """Replay ``trace`` backwards over ``solution``.

    Returns final vertex -> the solution vertex it descends from. Vertices
    contributed by marking events map to ``mark_tag(index, event)`` (None by default).
    """
    cur: dict = {v: v for v in solution}
    events = trace.events
    for i in range(len(events) - 1, -1, -1):
        ev = events[i]
        if isinstance(ev, Marked):
            if ev.vertex not in cur:
                cur[ev.vertex] = mark_tag(i, ev) if mark_tag else None
        elif isinstance(ev, Structured):
            y = ev.introduced[0]
            if y in cur:
                cur[ev.substitute] = cur.pop(y)
    return cur


def lift(g_original: MultiGraph, trace: ReductionTrace, s_kernel: FvsSolution | Iterable[int]) -> FvsSolution:
    vs = s_kernel.vertex_set if isinstance(s_kernel, FvsSolution) else set(s_kernel)
    out = set(lift_map(trace, vs))
    if not is_acyclic(g_original, out):
        raise GraphError("lifted set is infeasible; the kernel solution was not a feasible FVS")
    meta = dict(s_kernel.meta) if isinstance(s_kernel, FvsSolution) else {}
    return FvsSolution(out, meta)
