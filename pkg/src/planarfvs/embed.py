"""Planarity testing, rotation systems and edge-only triangulation."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .graph import MultiGraph


@dataclass
class NonPlanarWitness:
    """Kuratowski subdivision (K5 or K3,3) found inside the input."""

    edges: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return False


@dataclass
class Embedding:
    """Combinatorial embedding of a simple graph as a rotation system.

    ``ccw_next[v][u]`` is the neighbour following ``u`` counter-clockwise around
    ``v``; ``ccw_prev`` is its inverse. Walking a face: after the dart ``u -> v``
    comes ``v -> ccw_next[v][u]``.
    """

    ccw_next: dict[int, dict[int, int]]
    ccw_prev: dict[int, dict[int, int]]
    synthetic: set[tuple[int, int]] = field(default_factory=set)
    orientation: str = "ccw"

    @property
    def vertices(self) -> list[int]:
        return list(self.ccw_next)

    @property
    def n(self) -> int:
        return len(self.ccw_next)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.ccw_next.values()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.ccw_next.get(u, ())

    def rotation(self, v: int) -> list[int]:
        """Neighbours of ``v`` in counter-clockwise order."""
        nxt = self.ccw_next[v]
        if not nxt:
            return []
        start = min(nxt)
        out = [start]
        u = nxt[start]
        while u != start:
            out.append(u)
            u = nxt[u]
        return out

    def faces(self) -> list[list[int]]:
        """Face boundary walks as vertex sequences (one entry per dart)."""
        seen: set[tuple[int, int]] = set()
        faces = []
        for v in self.ccw_next:
            for u in self.ccw_next[v]:
                if (v, u) in seen:
                    continue
                walk = []
                a, b = v, u
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    a, b = b, self.ccw_next[b][a]
                faces.append(walk)
        return faces

    @property
    def face_count(self) -> int:
        return len(self.faces()) + sum(1 for v in self.ccw_next if not self.ccw_next[v])

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.ccw_next:
            if s in seen:
                continue
            seen.add(s)
            comp, stack = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.ccw_next[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out

    def euler_ok(self) -> bool:
        """v - e + f == 2 on every connected component."""
        comp_of = {}
        comps = self.components()
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        fcount = [0] * len(comps)
        for walk in self.faces():
            fcount[comp_of[walk[0]]] += 1
        for i, comp in enumerate(comps):
            e = sum(len(self.ccw_next[v]) for v in comp) // 2
            f = fcount[i] if e else 1
            if len(comp) - e + f != 2:
                return False
        return True

    def insert_edge(self, a: int, b: int, c: int) -> None:
        """Add chord a-c inside the face containing darts a->b->c."""
        # at c, a goes right after b; at a, c goes right before b
        nc, pc = self.ccw_next[c], self.ccw_prev[c]
        after = nc[b]
        nc[b], nc[a] = a, after
        pc[a], pc[after] = b, a
        na, pa = self.ccw_next[a], self.ccw_prev[a]
        before = pa[b]
        na[before], na[c] = c, b
        pa[c], pa[b] = before, c

    def copy(self) -> "Embedding":
        return Embedding(
            {v: dict(r) for v, r in self.ccw_next.items()},
            {v: dict(r) for v, r in self.ccw_prev.items()},
            set(self.synthetic),
            self.orientation,
        )

    def to_graph(self) -> MultiGraph:
        g = MultiGraph(self.ccw_next)
        for v, r in self.ccw_next.items():
            for u in r:
                if v < u:
                    g.add_edge(v, u)
        return g


def _simple_nx(g: MultiGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g)
    h.add_edges_from(g.simple_edges())
    return h


def _from_nx(pe: nx.PlanarEmbedding) -> Embedding:
    nxt: dict[int, dict[int, int]] = {}
    prv: dict[int, dict[int, int]] = {}
    for v in pe.nodes:
        nv, pv = {}, {}
        for u in pe[v]:
            nv[u] = pe[v][u]["ccw"]
            pv[u] = pe[v][u]["cw"]
        nxt[v], prv[v] = nv, pv
    return Embedding(nxt, prv)


def test_and_embed(g: MultiGraph | nx.Graph) -> Embedding | NonPlanarWitness:
    """Embed the simple graph underlying ``g`` or return a Kuratowski witness.

    Loops and parallel copies are ignored. Disconnected inputs are embedded per
    component.
    """
    h = g if isinstance(g, nx.Graph) else _simple_nx(g)
    planar, cert = nx.check_planarity(h, counterexample=True)
    if not planar:
        return NonPlanarWitness(sorted(tuple(sorted(e)) for e in cert.edges))
    return _from_nx(cert)


def is_planar(g: MultiGraph) -> bool:
    return isinstance(test_and_embed(g), Embedding)


def triangulate(emb: Embedding) -> Embedding:
    """Add chords until every face of every component with >= 3 vertices is a triangle.

    Returns a new embedding; added edges are listed in ``synthetic`` as sorted pairs.
    Disconnected inputs are triangulated per component (components are not joined).
    """
    out = emb.copy()
    nxt = out.ccw_next
    for walk in emb.faces():
        k = len(walk)
        if k <= 3:
            continue
        # circular doubly linked list over walk positions
        nx_i = list(range(1, k)) + [0]
        pv_i = [k - 1] + list(range(k - 1))
        size = k
        cur = 0
        misses = 0
        while size > 3:
            a, b, c = walk[pv_i[cur]], walk[cur], walk[nx_i[cur]]
            if a != c and c not in nxt[a]:
                out.insert_edge(a, b, c)
                out.synthetic.add((min(a, c), max(a, c)))
                p, q = pv_i[cur], nx_i[cur]
                nx_i[p], pv_i[q] = q, p
                size -= 1
                cur = p
                misses = 0
            else:
                cur = nx_i[cur]
                misses += 1
                if misses > size + 1:
                    raise RuntimeError("no admissible chord in face; embedding is inconsistent")
    return out
