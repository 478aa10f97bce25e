import random
from fractions import Fraction

import pytest

from oracles import oracle_planar
from planarfvs.dimacs import DimacsError, count_crossings, load_dimacs, planarize
from planarfvs.graph import MultiGraph


def write_pair(tmp_path, arcs, coords, name="g"):
    gr = tmp_path / f"{name}.gr"
    co = tmp_path / f"{name}.co"
    gr.write_text("c test\np sp %d %d\n" % (len(coords), len(arcs)) + "".join(f"a {u} {v} 1\n" for u, v in arcs))
    co.write_text("p aux sp co %d\n" % len(coords) + "".join(f"v {v} {x} {y}\n" for v, (x, y) in coords.items()))
    return str(gr), str(co)


def crossings_oracle(points, edges) -> int:
    """Count pairs of edges sharing a point other than a common endpoint (cross-multiplied integer test)."""

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def within(p, a, b):
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])

    bad = 0
    pts = {v: (Fraction(x), Fraction(y)) for v, (x, y) in points.items()}
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            (a, b), (c, d) = edges[i], edges[j]
            shared = {a, b} & {c, d}
            p1, p2, q1, q2 = pts[a], pts[b], pts[c], pts[d]
            o1, o2, o3, o4 = cross(p1, p2, q1), cross(p1, p2, q2), cross(q1, q2, p1), cross(q1, q2, p2)
            if shared:
                continue
            if o1 * o2 < 0 and o3 * o4 < 0:
                bad += 1
            elif (o1 == 0 and within(q1, p1, p2)) or (o2 == 0 and within(q2, p1, p2)):
                bad += 1
            elif (o3 == 0 and within(p1, q1, q2)) or (o4 == 0 and within(p2, q1, q2)):
                bad += 1
    return bad


def test_single_crossing(tmp_path):
    gr, co = write_pair(tmp_path, [(1, 2), (3, 4)], {1: (0, 0), 2: (10, 10), 3: (0, 10), 4: (10, 0)})
    g, pts = load_dimacs(gr, co, with_coords=True)
    assert (g.n, g.m) == (5, 4)
    new = max(g)
    assert new == 5 and pts[new] == (5, 5)
    assert sorted(g.neighbors(new)) == [1, 2, 3, 4]


def test_reverse_arcs_merge(tmp_path):
    gr, co = write_pair(tmp_path, [(1, 2), (2, 1), (1, 2), (2, 2)], {1: (0, 0), 2: (1, 0)})
    g = load_dimacs(gr, co)
    assert (g.n, g.m) == (2, 1)


def test_malformed_line_reports_line_number(tmp_path):
    gr = tmp_path / "bad.gr"
    co = tmp_path / "bad.co"
    gr.write_text("p sp 2 1\na 1 x 3\n")
    co.write_text("v 1 0 0\nv 2 1 1\n")
    with pytest.raises(DimacsError, match=r"bad\.gr:2"):
        load_dimacs(str(gr), str(co))
    gr.write_text("a 1 2 1\n")
    co.write_text("v 1 0 0\nq 2 1 1\n")
    with pytest.raises(DimacsError, match=r"bad\.co:2"):
        load_dimacs(str(gr), str(co))


def test_missing_coordinate(tmp_path):
    gr, co = write_pair(tmp_path, [(1, 2), (2, 3)], {1: (0, 0), 2: (1, 0)})
    with pytest.raises(DimacsError, match="vertex 3"):
        load_dimacs(gr, co)


def test_collinear_overlap_rejected():
    pts = {1: (0, 0), 2: (4, 0), 3: (2, 0), 4: (6, 0)}
    with pytest.raises(DimacsError):
        planarize(pts, [(1, 2), (3, 4)])


def test_t_junction_splits_edge():
    pts = {1: (0, 0), 2: (4, 0), 3: (2, 0), 4: (2, 3)}
    out_pts, out_edges = planarize(pts, [(1, 2), (3, 4)])
    assert sorted(out_edges) == [(1, 3), (2, 3), (3, 4)]


def test_random_segments_are_fully_planarized():
    for seed in range(25):
        rng = random.Random(seed)
        pts = {v: (rng.randint(0, 30), rng.randint(0, 30)) for v in range(1, 16)}
        rep = {}
        pts = {v: p for v, p in pts.items() if rep.setdefault(p, v) == v}
        ids = sorted(pts)
        edges = sorted({tuple(sorted(rng.sample(ids, 2))) for _ in range(14)})
        try:
            out_pts, out_edges = planarize(pts, edges)
        except DimacsError:
            continue  # collinear overlap in the random draw
        assert crossings_oracle(out_pts, out_edges) == 0
        assert count_crossings(out_pts, out_edges) == 0
        assert oracle_planar(MultiGraph.from_edges(out_edges, out_pts))


def test_count_crossings_agrees_with_oracle_on_raw_input():
    rng = random.Random(3)
    for _ in range(30):
        pts = {v: (rng.randint(0, 50), rng.randint(0, 50)) for v in range(8)}
        if len(set(pts.values())) < 8:
            continue
        edges = sorted({tuple(sorted(rng.sample(range(8), 2))) for _ in range(6)})
        assert (count_crossings(pts, edges) == 0) == (crossings_oracle(pts, edges) == 0)
