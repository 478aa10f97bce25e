"""DIMACS road-network ingestion with straight-line planarization."""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable

from .graph import GraphError, MultiGraph

Point = tuple[Fraction, Fraction]


class DimacsError(GraphError):
    pass


def _read_lines(path: str) -> Iterable[tuple[int, list[str]]]:
    with open(path) as fh:
        for no, line in enumerate(fh, 1):
            parts = line.split()
            if not parts or parts[0] == "c":
                continue
            yield no, parts


def read_gr(path: str) -> list[tuple[int, int]]:
    arcs = []
    for no, parts in _read_lines(path):
        tag = parts[0]
        if tag == "p":
            continue
        if tag != "a" or len(parts) < 3:
            raise DimacsError(f"{path}:{no}: malformed arc line")
        try:
            arcs.append((int(parts[1]), int(parts[2])))
        except ValueError:
            raise DimacsError(f"{path}:{no}: malformed arc line") from None
    return arcs


def read_co(path: str) -> dict[int, tuple[int, int]]:
    coords = {}
    for no, parts in _read_lines(path):
        tag = parts[0]
        if tag == "p":
            continue
        if tag != "v" or len(parts) != 4:
            raise DimacsError(f"{path}:{no}: malformed coordinate line")
        try:
            coords[int(parts[1])] = (int(parts[2]), int(parts[3]))
        except ValueError:
            raise DimacsError(f"{path}:{no}: malformed coordinate line") from None
    return coords


# -- exact geometry -------------------------------------------------------------

def _orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear with a-b and inside its bounding box."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _crossing_point(p1: Point, p2: Point, q1: Point, q2: Point) -> Point:
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    den = rx * sy - ry * sx
    t = Fraction((q1[0] - p1[0]) * sy - (q1[1] - p1[1]) * sx) / den
    return (p1[0] + t * rx, p1[1] + t * ry)


def _param(p: Point, a: Point, b: Point) -> Fraction:
    if a[0] != b[0]:
        return Fraction(p[0] - a[0]) / (b[0] - a[0])
    return Fraction(p[1] - a[1]) / (b[1] - a[1])


def planarize(points: dict[int, Point], edges: list[tuple[int, int]]) -> tuple[dict[int, Point], list[tuple[int, int]]]:
    """Split straight-line edges at every crossing and at vertices lying on them.

    ``points`` must be pairwise distinct and ``edges`` simple. Crossings get new
    vertex ids above the largest input id (in sorted point order). Collinear
    overlapping edges raise DimacsError.
    """
    pts = {v: (Fraction(x), Fraction(y)) for v, (x, y) in points.items()}
    segs = [(u, v) for u, v in edges]
    if not segs:
        return dict(pts), []
    # uniform grid buckets sized by the mean edge extent
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    mean = sum(max(abs(pts[u][0] - pts[v][0]), abs(pts[u][1] - pts[v][1])) for u, v in segs) / len(segs)
    cell = max(Fraction(mean), Fraction(span) / 4096, Fraction(1, 10**9))
    x0, y0 = min(xs), min(ys)

    def cells(a: Point, b: Point):
        i0, i1 = sorted((math.floor((a[0] - x0) / cell), math.floor((b[0] - x0) / cell)))
        j0, j1 = sorted((math.floor((a[1] - y0) / cell), math.floor((b[1] - y0) / cell)))
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                yield i, j

    bucket: dict[tuple[int, int], list[int]] = defaultdict(list)
    for k, (u, v) in enumerate(segs):
        for c in cells(pts[u], pts[v]):
            bucket[c].append(k)
    # vertices by cell for T-junction checks
    vbucket: dict[tuple[int, int], list[int]] = defaultdict(list)
    for v, p in pts.items():
        vbucket[(math.floor((p[0] - x0) / cell), math.floor((p[1] - y0) / cell))].append(v)

    splits: dict[int, set] = defaultdict(set)  # segment -> vertex ids or points on its interior
    seen_pairs = set()
    for members in bucket.values():
        for ii in range(len(members)):
            a = members[ii]
            for jj in range(ii + 1, len(members)):
                b = members[jj]
                key = (a, b) if a < b else (b, a)
                if key in seen_pairs:
                    continue
                seen_pairs.add(key)
                _intersect(key[0], key[1], segs, pts, splits)
    for k, (u, v) in enumerate(segs):
        a, b = pts[u], pts[v]
        for c in cells(a, b):
            for w in vbucket.get(c, ()):
                if w != u and w != v and _orient(a, b, pts[w]) == 0 and _on_segment(pts[w], a, b):
                    splits[k].add(w)

    out_pts = dict(pts)
    point_id: dict[Point, int] = {p: v for v, p in pts.items()}
    new_points = sorted({p for s in splits.values() for p in s if isinstance(p, tuple)} - set(point_id))
    nxt = max(pts) + 1
    for p in new_points:
        point_id[p] = nxt
        out_pts[nxt] = p
        nxt += 1
    out_edges = set()
    for k, (u, v) in enumerate(segs):
        a, b = pts[u], pts[v]
        inner = []
        for s in splits.get(k, ()):
            w = s if isinstance(s, int) else point_id[s]
            inner.append((_param(out_pts[w], a, b), w))
        chain = [u] + [w for _, w in sorted(set(inner))] + [v]
        for x, y in zip(chain, chain[1:]):
            if x != y:
                out_edges.add((min(x, y), max(x, y)))
    return out_pts, sorted(out_edges)


def _intersect(a: int, b: int, segs, pts, splits) -> None:
    u1, v1 = segs[a]
    u2, v2 = segs[b]
    p1, p2, q1, q2 = pts[u1], pts[v1], pts[u2], pts[v2]
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: allowed only to touch at a shared endpoint
        lo1, hi1 = sorted((p1, p2))
        lo2, hi2 = sorted((q1, q2))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            raise DimacsError(f"collinear overlapping edges {u1}-{v1} and {u2}-{v2}")
        return
    if d1 * d2 < 0 and d3 * d4 < 0:
        p = _crossing_point(p1, p2, q1, q2)
        splits[a].add(p)
        splits[b].add(p)
    # endpoint-on-segment cases are handled by the vertex pass


def load_dimacs(gr_path: str, co_path: str, with_coords: bool = False):
    """Undirected planar straight-line graph from a DIMACS ``.gr``/``.co`` pair.

    Reverse and duplicate arcs are merged and self-arcs dropped; vertices with
    identical coordinates are merged into the smallest id. Returns the graph, or
    ``(graph, coords)`` when ``with_coords`` is set.
    """
    arcs = read_gr(gr_path)
    coords = read_co(co_path)
    for u, v in arcs:
        for w in (u, v):
            if w not in coords:
                raise DimacsError(f"{gr_path}: vertex {w} has no coordinate")
    rep: dict[tuple[int, int], int] = {}
    alias = {}
    for v in sorted(coords):
        alias[v] = rep.setdefault(coords[v], v)
    edges = set()
    for u, v in arcs:
        a, b = alias[u], alias[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    used = {v for v in alias.values()}
    points = {v: coords[v] for v in used}
    out_pts, out_edges = planarize(points, sorted(edges))
    g = MultiGraph.from_edges(out_edges, sorted(out_pts))
    if with_coords:
        return g, out_pts
    return g


def count_crossings(points: dict[int, Point], edges: list[tuple[int, int]]) -> int:
    """Brute-force audit: proper crossings plus vertices lying inside an edge."""
    pts = {v: (Fraction(p[0]), Fraction(p[1])) for v, p in points.items()}
    bad = 0
    for i, (u1, v1) in enumerate(edges):
        p1, p2 = pts[u1], pts[v1]
        for u2, v2 in edges[i + 1:]:
            q1, q2 = pts[u2], pts[v2]
            d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
            d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
            if d1 * d2 < 0 and d3 * d4 < 0:
                bad += 1
        for w, p in pts.items():
            if w not in (u1, v1) and _orient(p1, p2, p) == 0 and _on_segment(p, p1, p2):
                bad += 1
    return bad
