"""Undirected multigraph substrate and FVS feasibility checks."""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO


class GraphError(ValueError):
    pass


class MultiGraph:
    """Undirected multigraph with stable integer vertex ids.

    Each vertex pair carries at most two parallel edges and each vertex at most
    one self-loop; further copies are dropped on insertion (the number dropped
    is counted in ``discarded_edges``). Every edge has an id that is shared by
    both endpoint incidence lists.
    """

    def __init__(self, vertices: Iterable[int] = ()):
        self._adj: dict[int, dict[int, list[int]]] = {}
        self._deg: dict[int, int] = {}
        self._edges: dict[int, tuple[int, int]] = {}
        self._next_edge = 0
        self._max_id = -1
        self.discarded_edges = 0
        for v in vertices:
            self.add_vertex(v)

    # -- queries ---------------------------------------------------------
    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def max_id(self) -> int:
        """Largest id ever issued; freed ids are not reused."""
        return self._max_id

    def vertices(self) -> list[int]:
        return list(self._adj)

    def degree(self, v: int) -> int:
        return self._deg[v]

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` (``v`` itself included if it has a loop)."""
        return list(self._adj[v])

    def multiplicity(self, u: int, v: int) -> int:
        return len(self._adj[u].get(v, ()))

    def has_loop(self, v: int) -> bool:
        return v in self._adj[v]

    def incident(self, v: int) -> list[tuple[int, int]]:
        """(neighbour, edge id) records, one per incident edge."""
        return [(u, e) for u, ids in self._adj[v].items() for e in ids]

    def edges(self) -> list[tuple[int, int, int]]:
        """(edge id, u, v) triples."""
        return [(e, u, v) for e, (u, v) in self._edges.items()]

    def edge_pairs(self) -> list[tuple[int, int]]:
        return list(self._edges.values())

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def adjacency(self, v: int) -> dict[int, int]:
        return {u: len(ids) for u, ids in self._adj[v].items()}

    # -- mutation --------------------------------------------------------
    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = self._max_id + 1
        if v in self._adj:
            return v
        if v < 0:
            raise GraphError(f"negative vertex id {v}")
        self._adj[v] = {}
        self._deg[v] = 0
        if v > self._max_id:
            self._max_id = v
        return v

    def add_edge(self, u: int, v: int) -> int | None:
        """Insert edge u-v; returns its id, or None if it exceeded the multiplicity cap."""
        if u not in self._adj:
            self.add_vertex(u)
        if v not in self._adj:
            self.add_vertex(v)
        ids = self._adj[u].get(v)
        cap = 1 if u == v else 2
        if ids is not None and len(ids) >= cap:
            self.discarded_edges += 1
            return None
        e = self._next_edge
        self._next_edge += 1
        self._edges[e] = (u, v)
        self._adj[u].setdefault(v, []).append(e)
        if u == v:
            self._deg[u] += 2
        else:
            self._adj[v].setdefault(u, []).append(e)
            self._deg[u] += 1
            self._deg[v] += 1
        return e

    def delete_edge(self, e: int) -> None:
        try:
            u, v = self._edges.pop(e)
        except KeyError:
            raise GraphError(f"unknown edge id {e}") from None
        self._unlink(u, v, e)
        if u == v:
            self._deg[u] -= 2
        else:
            self._unlink(v, u, e)
            self._deg[u] -= 1
            self._deg[v] -= 1

    def _unlink(self, u: int, v: int, e: int) -> None:
        ids = self._adj[u][v]
        ids.remove(e)
        if not ids:
            del self._adj[u][v]

    def remove_edges_between(self, u: int, v: int) -> int:
        ids = list(self._adj[u].get(v, ()))
        for e in ids:
            self.delete_edge(e)
        return len(ids)

    def delete_vertex(self, v: int) -> list[int]:
        """Remove ``v`` and its incident edges; returns its former distinct neighbours."""
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v}")
        nbrs = [u for u in self._adj[v] if u != v]
        for u, ids in self._adj[v].items():
            for e in ids:
                del self._edges[e]
            if u != v:
                del self._adj[u][v]
                self._deg[u] -= len(ids)
        del self._adj[v]
        del self._deg[v]
        return nbrs

    def contract_degree_two(self, v: int) -> int | None:
        """Bypass a degree-two vertex: delete it and join its two neighbours.

        If both edges lead to the same neighbour ``u`` the result is a self-loop
        at ``u``. Returns the new edge id (None if the cap swallowed it).
        """
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v}")
        if self._deg[v] != 2 or v in self._adj[v]:
            raise GraphError(f"vertex {v} is not a loop-free degree-two vertex")
        ends = [u for u, ids in self._adj[v].items() for _ in ids]
        self.delete_vertex(v)
        return self.add_edge(ends[0], ends[1])

    def copy(self) -> "MultiGraph":
        g = MultiGraph.__new__(MultiGraph)
        g._adj = {v: {u: list(ids) for u, ids in nb.items()} for v, nb in self._adj.items()}
        g._deg = dict(self._deg)
        g._edges = dict(self._edges)
        g._next_edge = self._next_edge
        g._max_id = self._max_id
        g.discarded_edges = self.discarded_edges
        return g

    def subgraph(self, keep: Iterable[int]) -> "MultiGraph":
        """Induced subgraph on ``keep`` (vertex ids preserved, id counter inherited)."""
        keep = set(keep)
        g = MultiGraph()
        g._max_id = self._max_id
        for v in sorted(keep):
            g.add_vertex(v)
        ids = []
        for v in keep:
            for u, es in self._adj[v].items():
                if u >= v and u in keep:
                    ids.extend(es)
        ids.sort()
        for e in ids:
            g.add_edge(*self._edges[e])
        return g

    def reserve_ids(self, upto: int) -> None:
        """Make sure freshly issued vertex ids are larger than ``upto``."""
        self._max_id = max(self._max_id, upto)

    def without(self, removed: Iterable[int]) -> "MultiGraph":
        removed = set(removed)
        return self.subgraph(v for v in self._adj if v not in removed)

    def simple_edges(self) -> set[tuple[int, int]]:
        """Loop-free edge set with parallel copies collapsed, as (min, max) pairs."""
        return {(min(u, v), max(u, v)) for u, v in self._edges.values() if u != v}

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self._adj:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def audit(self) -> None:
        """Raise AssertionError if any representation invariant is broken."""
        seen_ids = set()
        deg_sum = 0
        for v, nb in self._adj.items():
            d = 0
            for u, ids in nb.items():
                assert ids, f"empty incidence list {v}-{u}"
                assert u in self._adj, f"dangling neighbour {u} of {v}"
                assert len(ids) <= (1 if u == v else 2), f"multiplicity cap broken at {v}-{u}"
                for e in ids:
                    assert self._edges.get(e) in ((u, v), (v, u)), f"edge {e} mismatch"
                    seen_ids.add(e)
                    if u == v:
                        d += 2
                    else:
                        assert e in self._adj[u][v], f"asymmetric edge {e}"
                        d += 1
            assert d == self._deg[v], f"degree of {v} is {self._deg[v]}, recount {d}"
            deg_sum += d
        assert seen_ids == set(self._edges), "edge table and incidence lists disagree"
        assert deg_sum == 2 * len(self._edges), "handshake lemma violated"

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "MultiGraph":
        g = cls(vertices)
        for u, v in edges:
            g.add_edge(u, v)
        return g


class DegreeIndex:
    """Lazy max-degree priority index over a mutating MultiGraph.

    Callers ``touch`` a vertex whenever its degree may have changed; stale heap
    entries are discarded on pop. Ties go to the smallest id.
    """

    def __init__(self, g: MultiGraph, vertices: Iterable[int] | None = None):
        self.g = g
        self._heap = [(-g.degree(v), v) for v in (g if vertices is None else vertices)]
        heapq.heapify(self._heap)

    def touch(self, v: int) -> None:
        if v in self.g:
            heapq.heappush(self._heap, (-self.g.degree(v), v))

    def pop_max(self, min_degree: int = 0) -> int | None:
        heap = self._heap
        while heap:
            d, v = heap[0]
            if v not in self.g or -d != self.g.degree(v):
                heapq.heappop(heap)
                continue
            if -d < min_degree:
                return None
            heapq.heappop(heap)
            return v
        return None


@dataclass
class FvsSolution:
    vertex_set: frozenset[int]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertex_set = frozenset(self.vertex_set)

    def __len__(self) -> int:
        return len(self.vertex_set)

    @property
    def size(self) -> int:
        return len(self.vertex_set)


class _DSU:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while x != root:
            nxt = p.get(x, x)
            p[x] = root
            x = nxt
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_acyclic(g: MultiGraph, removed: Iterable[int] = ()) -> bool:
    """True iff ``g`` minus ``removed`` is a forest (loops and parallel pairs are cycles)."""
    removed = removed if isinstance(removed, (set, frozenset)) else set(removed)
    dsu = _DSU()
    for u, v in g.edge_pairs():
        if u in removed or v in removed:
            continue
        if not dsu.union(u, v):
            return False
    return True


def verify_fvs(g: MultiGraph, s: FvsSolution | Iterable[int]) -> bool:
    vs = s.vertex_set if isinstance(s, FvsSolution) else frozenset(s)
    for v in vs:
        if v not in g:
            raise GraphError(f"foreign vertex {v}")
    return is_acyclic(g, vs)


def minimal_scan(g: MultiGraph, solution: Iterable[int], order: Iterable[int]) -> set[int]:
    """Drop redundant vertices of a feasible ``solution``, trying them in ``order``.

    Works incrementally: the forest ``g - solution`` is kept in a union-find and a
    candidate is released when re-inserting it closes no cycle. Vertices of
    ``order`` outside the solution are skipped.
    """
    sol = set(solution)
    dsu = _DSU()
    for u, v in g.edge_pairs():
        if u in sol or v in sol:
            continue
        if not dsu.union(u, v):
            raise GraphError("not a feasible FVS")
    for v in order:
        if v not in sol:
            continue
        if g.has_loop(v):
            continue
        roots = []
        ok = True
        for u, k in g.adjacency(v).items():
            if u in sol:
                continue
            if k > 1:
                ok = False
                break
            roots.append(dsu.find(u))
        if not ok or len(set(roots)) != len(roots):
            continue
        sol.discard(v)
        for r in roots:
            dsu.union(v, r)
    return sol


# -- edge-list text format --------------------------------------------------

def read_edgelist(src: str | TextIO) -> MultiGraph:
    """Parse ``u v`` lines; ``#`` starts a comment. A line with a single id declares an isolated vertex."""
    fh = io.StringIO(src) if isinstance(src, str) else src
    g = MultiGraph()
    for lineno, raw in enumerate(fh, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integer ids, got {raw.strip()!r}") from None
        if len(ids) == 1:
            g.add_vertex(ids[0])
        elif len(ids) == 2:
            g.add_edge(ids[0], ids[1])
        else:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
    return g


def write_edgelist(g: MultiGraph, fh: TextIO, comment: str | None = None) -> None:
    if comment:
        for line in comment.splitlines():
            fh.write(f"# {line}\n")
    touched = set()
    for _, u, v in sorted(g.edges()):
        fh.write(f"{u} {v}\n")
        touched.add(u)
        touched.add(v)
    for v in sorted(g):
        if v not in touched:
            fh.write(f"{v}\n")


def load_edgelist(path: str) -> MultiGraph:
    with open(path) as fh:
        return read_edgelist(fh)
