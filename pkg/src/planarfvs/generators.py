"""Seeded planar instance families: grids, random planar graphs, triangulations."""

from __future__ import annotations

import numpy as np
from scipy.spatial import Delaunay

from .embed import Embedding, test_and_embed, triangulate
from .graph import GraphError, MultiGraph


def gen_grid(rows: int, cols: int) -> MultiGraph:
    if rows < 2 or cols < 2:
        raise GraphError("grid needs rows, cols >= 2")
    g = MultiGraph(range(rows * cols))
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                g.add_edge(v, v + 1)
            if i + 1 < rows:
                g.add_edge(v, v + cols)
    return g


def _delaunay_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if n <= 3:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((int(min(u, v)), int(max(u, v))))
    return sorted(edges)


def gen_triangu(n: int, seed: int) -> MultiGraph:
    """Delaunay triangulation of ``n`` random points; the outer face (hull) is left open."""
    if n < 1:
        raise GraphError("n must be positive")
    rng = np.random.default_rng(seed)
    return MultiGraph.from_edges(_delaunay_edges(n, rng), range(n))


def gen_random_planar(n: int, m: int, seed: int) -> MultiGraph:
    """Connected planar graph with exactly ``n`` vertices and ``m`` edges.

    Start from a triangulation of random points, keep a random spanning tree and
    delete uniformly chosen other edges until ``m`` remain.
    """
    if n < 1:
        raise GraphError("n must be positive")
    top = max(n - 1, 3 * n - 6) if n >= 3 else n * (n - 1) // 2
    if not n - 1 <= m <= top:
        raise GraphError(f"m={m} infeasible for a connected planar graph on {n} vertices")
    rng = np.random.default_rng(seed)
    edges = _delaunay_edges(n, rng)
    if len(edges) < m:
        emb = test_and_embed(MultiGraph.from_edges(edges, range(n)))
        assert isinstance(emb, Embedding)
        edges = sorted(edges + sorted(triangulate(emb).synthetic))
    # random spanning tree: Kruskal over shuffled edges
    perm = rng.permutation(len(edges))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, rest = [], []
    for i in perm:
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(edges[i])
        else:
            rest.append(edges[i])
    keep = m - len(tree)
    chosen = [rest[i] for i in sorted(rng.choice(len(rest), size=keep, replace=False))] if keep else []
    return MultiGraph.from_edges(sorted(tree + chosen), range(n))
