"""Exact FVS: an enumeration oracle and a budgeted branch-and-bound solver."""

from __future__ import annotations

import heapq
import itertools
import time
from collections import deque
from dataclasses import dataclass

from .approx import two_approx
from .graph import FvsSolution, GraphError, MultiGraph, is_acyclic
from .kernel import kernelize, lift

BRUTE_FORCE_LIMIT = 20


class Timeout(Exception):
    """The exact solver ran out of its time budget before proving optimality."""


@dataclass
class ExactConfig:
    time_budget: float = 15.0  # CPU seconds
    kernelize_first: bool = True
    node_limit: int | None = None  # optional deterministic cap on search nodes

    def __post_init__(self):
        if not self.time_budget > 0:
            raise ValueError("time_budget must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")


def two_core(g: MultiGraph) -> set[int]:
    deg = {v: g.degree(v) for v in g}
    gone: set[int] = set()
    stack = [v for v, d in deg.items() if d <= 1]
    while stack:
        v = stack.pop()
        if v in gone:
            continue
        gone.add(v)
        for u, k in g.adjacency(v).items():
            if u not in gone and u != v:
                deg[u] -= k
                if deg[u] <= 1:
                    stack.append(u)
    return set(g) - gone


def brute_force_opt(g: MultiGraph) -> FvsSolution:
    """Minimum FVS by enumeration; smallest size, then lexicographically first."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise GraphError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {g.n}")
    # a minimum solution never uses a vertex outside the 2-core
    core = sorted(two_core(g))
    h = g.subgraph(core)
    for k in range(len(core) + 1):
        for cand in itertools.combinations(core, k):
            if is_acyclic(h, cand):
                return FvsSolution(cand, {"algo": "brute-force"})
    raise AssertionError("unreachable")


# -- branch and bound -----------------------------------------------------------
#
# State: adjacency dict v -> {u: multiplicity <= 2} (a loop is adj[v][v] == 1) and
# a set of forbidden vertices that the search has decided to keep. Adjacent
# forbidden vertices are merged, so a double edge between a free vertex and a
# forbidden one forces the free vertex, and a loop on a forbidden vertex means
# the branch is infeasible.


class _Infeasible(Exception):
    pass


class _State:
    __slots__ = ("adj", "deg", "forb")

    def __init__(self, adj, deg, forb):
        self.adj = adj
        self.deg = deg
        self.forb = forb

    @classmethod
    def from_graph(cls, g: MultiGraph, keep=None) -> "_State":
        adj, deg = {}, {}
        for v in g if keep is None else keep:
            a = dict(g.adjacency(v))
            if keep is not None:
                a = {u: k for u, k in a.items() if u in keep}
            adj[v] = a
        for v, a in adj.items():
            deg[v] = sum(a.values()) + a.get(v, 0)
        return cls(adj, deg, set())

    def copy(self) -> "_State":
        return _State({v: dict(a) for v, a in self.adj.items()}, dict(self.deg), set(self.forb))

    def sub(self, verts) -> "_State":
        return _State({v: dict(self.adj[v]) for v in verts}, {v: self.deg[v] for v in verts}, self.forb & set(verts))

    def remove(self, v: int) -> list[int]:
        a = self.adj.pop(v)
        del self.deg[v]
        self.forb.discard(v)
        out = []
        for u, k in a.items():
            if u != v:
                del self.adj[u][v]
                self.deg[u] -= k
                out.append(u)
        return out

    def add_edge(self, a: int, b: int, k: int = 1) -> None:
        if a == b:
            if b not in self.adj[a]:
                self.adj[a][a] = 1
                self.deg[a] += 2
            return
        cur = self.adj[a].get(b, 0)
        new = min(2, cur + k)
        if new != cur:
            self.adj[a][b] = self.adj[b][a] = new
            self.deg[a] += new - cur
            self.deg[b] += new - cur

    def merge(self, a: int, b: int) -> None:
        """Contract the forbidden vertex ``b`` into the forbidden vertex ``a``."""
        if self.adj[a].get(b, 0) >= 2:
            raise _Infeasible
        for u, k in list(self.adj[b].items()):
            if u not in (a, b):
                self.add_edge(a, u, k)
        self.remove(b)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.adj:
            if s in seen:
                continue
            seen.add(s)
            comp, stack = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out


def _reduce(st: _State, dirty, taken: list[int]) -> None:
    adj, deg, forb = st.adj, st.deg, st.forb
    queue = deque(sorted(set(dirty)))
    queued = set(queue)

    def push(xs):
        for x in xs:
            if x not in queued:
                queued.add(x)
                queue.append(x)

    def take(x):
        taken.append(x)
        push(st.remove(x))

    while queue:
        v = queue.popleft()
        queued.discard(v)
        if v not in adj:
            continue
        a = adj[v]
        if v in a:
            if v in forb:
                raise _Infeasible
            take(v)
            continue
        if deg[v] <= 1:
            push(st.remove(v))
            continue
        if v in forb:
            fn = [u for u in a if u in forb]
            if fn:
                for u in fn:
                    if u in adj:
                        st.merge(v, u)
                push([v])
                push(adj[v])
                continue
            forced = [u for u, k in a.items() if k == 2]
            if forced:
                for u in forced:
                    if u in adj:
                        take(u)
                push([v])
                continue
            if deg[v] == 2:
                x, y = list(a)
                st.remove(v)
                st.add_edge(x, y)
                push((x, y))
            continue
        # free vertex
        if any(k == 2 and u in forb for u, k in a.items()):
            take(v)
            continue
        if deg[v] == 2:
            if len(a) == 1:
                (u,) = a
                take(u)
                push([v])
                continue
            x, y = list(a)
            if x not in forb or y not in forb:
                st.remove(v)
                st.add_edge(x, y)
                push((x, y))


def _degree_bound(st: _State) -> int:
    n = len(st.adj)
    m = sum(st.deg.values()) // 2
    need = m - n
    if need <= 0:
        return 0
    gains = sorted((st.deg[v] - 1 for v in st.adj if v not in st.forb), reverse=True)
    acc = 0
    for i, gval in enumerate(gains):
        acc += gval
        if acc >= need:
            return i + 1
    return len(gains) + 1  # cannot be satisfied


def _rest_bound(adj, deg, forb) -> int:
    n = len(adj)
    need = sum(deg.values()) // 2 - n
    if need <= 0:
        return 0
    acc = 0
    for i, gval in enumerate(sorted((deg[v] - 1 for v in adj if v not in forb), reverse=True)):
        acc += gval
        if acc >= need:
            return i + 1
    return n + 1


def _packing_bound(st: _State, cap: int | None = None) -> int:
    """Greedy packing of cycles that share no free vertex; stops early at ``cap``.

    Packed cycles need distinct solution vertices outside what is left, so
    after every cycle the degree bound of the remainder is added on top.
    """
    adj = {v: dict(a) for v, a in st.adj.items()}
    forb = st.forb
    deg = dict(st.deg)
    heap: list[tuple[int, int]] = []

    def drop(v):
        stack = [v]
        while stack:
            x = stack.pop()
            if x not in adj:
                continue
            for u, k in adj.pop(x).items():
                if u != x and u in adj:
                    del adj[u][x]
                    deg[u] -= k
                    if deg[u] <= 1:
                        stack.append(u)
                    else:
                        heapq.heappush(heap, (deg[u], u))
            del deg[x]

    for v in [v for v in adj if deg[v] <= 1]:
        drop(v)
    count = 0
    # 2-cycles first
    for v in sorted(adj):
        if v not in adj:
            continue
        for u, k in list(adj[v].items()):
            if k == 2 and v in adj and u in adj:
                count += 1
                for x in (v, u):
                    if x not in forb:
                        drop(x)
                break
    heap.extend((d, v) for v, d in deg.items())
    heapq.heapify(heap)
    best = count + _rest_bound(adj, deg, forb)
    while adj:
        if cap is not None and best >= cap:
            return best
        d, s = heapq.heappop(heap)
        if s not in adj or deg[s] != d:
            continue
        parent = {s: None}
        q = deque([s])
        found = None
        while q and found is None:
            x = q.popleft()
            for y in adj[x]:
                if y == parent[x]:
                    continue
                if y in parent:
                    found = (x, y)
                    break
                parent[y] = x
                q.append(y)
        if found is None:
            for v in list(parent):
                drop(v)
            continue
        heapq.heappush(heap, (deg[s], s))
        x, y = found
        px, py = [], []
        while x is not None:
            px.append(x)
            x = parent[x]
        while y is not None:
            py.append(y)
            y = parent[y]
        common = set(px) & set(py)
        cyc = [v for v in px if v not in common] + [v for v in py if v not in common]
        cyc.append(next(v for v in px if v in common))
        count += 1
        free = [v for v in cyc if v not in forb]
        for v in free:
            drop(v)
        if not free:
            return 10**9  # a forbidden cycle; cannot happen after reduction
        best = max(best, count + _rest_bound(adj, deg, forb))
    return max(best, count)


def lower_bound(st: _State, cap: int | None = None) -> int:
    d = _degree_bound(st)
    if cap is not None and d >= cap:
        return d
    return max(d, _packing_bound(st, cap))


class _Search:
    def __init__(self, deadline: float, node_limit: int | None = None):
        self.deadline = deadline
        self.node_limit = node_limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if time.process_time() > self.deadline:
            raise Timeout(f"time budget exhausted after {self.nodes} search nodes")
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise Timeout(f"node limit {self.node_limit} reached")

    def solve(self, st: _State, dirty, ub: int) -> list[int] | None:
        """Minimum solution of ``st`` if its size is below ``ub``, else None."""
        self.tick()
        taken: list[int] = []
        try:
            _reduce(st, dirty, taken)
        except _Infeasible:
            return None
        ub -= len(taken)
        if ub <= 0:
            return None
        if not st.adj:
            return taken
        comps = st.components()
        if len(comps) > 1:
            comps.sort(key=lambda c: (len(c), min(c)))
            subs = [st.sub(c) for c in comps]
            lbs = [lower_bound(s) for s in subs]
            if sum(lbs) >= ub:
                return None
            rest = sum(lbs)
            out = list(taken)
            for s, lb in zip(subs, lbs):
                rest -= lb
                r = self.solve(s, (), ub - rest)
                if r is None:
                    return None
                ub -= len(r)
                out += r
            return out
        lb = lower_bound(st, ub)
        if lb >= ub:
            return None
        v = min((x for x in st.adj if x not in st.forb), key=lambda x: (-st.deg[x], x))
        best = None
        # include v
        s1 = st.copy()
        r = self.solve(s1, s1.remove(v), ub - 1)
        if r is not None:
            best = [v] + r
            ub = len(best)
        # exclude v
        if lb < ub:
            st.forb.add(v)
            r = self.solve(st, [v], ub)
            if r is not None:
                best = r
        return None if best is None else taken + best


def _solve_component(g: MultiGraph, comp: list[int], search: _Search) -> list[int]:
    keep = set(comp)
    incumbent = two_approx(g.subgraph(keep)).vertex_set
    st = _State.from_graph(g, keep)
    r = search.solve(st, sorted(keep), len(incumbent) + 1)
    assert r is not None
    return r


def solve_exact(g: MultiGraph, cfg: ExactConfig | None = None) -> FvsSolution:
    """Optimal FVS, or raise Timeout once ``cfg.time_budget`` CPU seconds are spent."""
    cfg = cfg or ExactConfig()
    t0 = time.perf_counter()
    # budget is charged in CPU time so a loaded host does not shrink it
    deadline = time.process_time() + cfg.time_budget
    if cfg.kernelize_first:
        ko = kernelize(g)
        h = ko.kernel
    else:
        h = g
    search = _Search(deadline, cfg.node_limit)
    search.tick()
    sol: list[int] = []
    for comp in sorted(h.components(), key=lambda c: (len(c), min(c))):
        sol += _solve_component(h, comp, search)
    meta = {"algo": "exact", "nodes": search.nodes, "elapsed": time.perf_counter() - t0}
    if cfg.kernelize_first:
        return lift(g, ko.trace, FvsSolution(sol, meta))
    return FvsSolution(sol, meta)


def root_lower_bound(g: MultiGraph) -> int:
    """Lower bound used at the root of the search (degree and cycle packing)."""
    return lower_bound(_State.from_graph(g))
