import random

import pytest

from conftest import complete, cycle, petersen
from oracles import oracle_planar
from planarfvs.embed import Embedding, NonPlanarWitness, is_planar, test_and_embed as embed, triangulate
from planarfvs.generators import gen_grid, gen_random_planar, gen_triangu
from planarfvs.graph import MultiGraph


def random_graph(seed: int) -> MultiGraph:
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    g = MultiGraph(range(n))
    for _ in range(rng.randint(0, 3 * n)):
        if n > 1:
            u, v = rng.sample(range(n), 2)
            g.add_edge(u, v)
    return g


def test_agrees_with_independent_planarity_oracle_on_500_graphs():
    verdicts = {True: 0, False: 0}
    for seed in range(500):
        g = random_graph(seed)
        res = embed(g)
        expected = oracle_planar(g)
        assert isinstance(res, Embedding) == expected, seed
        verdicts[expected] += 1
        if expected:
            assert res.euler_ok()
            assert res.m == len(g.simple_edges())
    assert verdicts[True] and verdicts[False]


@pytest.mark.parametrize("g", [complete(5), MultiGraph.from_edges([(a, b) for a in range(3) for b in range(3, 6)]), petersen()])
def test_kuratowski_witness(g):
    res = embed(g)
    assert isinstance(res, NonPlanarWitness) and not res
    # the witness is a subgraph of the input and itself non-planar
    w = MultiGraph.from_edges(res.edges)
    assert set(res.edges) <= g.simple_edges()
    assert not oracle_planar(w)


def test_rotation_is_a_cyclic_order_of_neighbours():
    g = gen_grid(4, 5)
    e = embed(g)
    for v in g:
        assert sorted(e.rotation(v)) == sorted(g.neighbors(v))
        for u in e.ccw_next[v]:
            assert e.ccw_prev[v][e.ccw_next[v][u]] == u


def test_loops_and_parallels_are_ignored_by_embedding():
    g = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)])
    e = embed(g)
    assert e.m == 3 and e.euler_ok()


def _check_triangulated(g: MultiGraph, t: Embedding, orig: Embedding):
    n = t.n
    assert t.m == 3 * n - 6
    assert all(len(f) == 3 for f in t.faces())
    assert t.euler_ok()
    # only edges added, and every added edge is flagged
    for u, v in g.simple_edges():
        assert t.has_edge(u, v)
    added = {(min(u, v), max(u, v)) for u in t.ccw_next for v in t.ccw_next[u]} - g.simple_edges()
    assert added == t.synthetic
    assert orig.m == len(g.simple_edges())  # input embedding untouched


@pytest.mark.parametrize(
    "g",
    [cycle(3), cycle(8), gen_grid(5, 7), gen_triangu(60, 1), gen_random_planar(80, 79, 2), gen_random_planar(100, 180, 3)],
)
def test_triangulate_reaches_3n_minus_6(g):
    e = embed(g)
    _check_triangulated(g, triangulate(e), e)


def test_triangulate_random_connected_planar():
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(3, 40)
        g = gen_random_planar(n, rng.randint(n - 1, 3 * n - 6), seed)
        e = embed(g)
        _check_triangulated(g, triangulate(e), e)


def test_triangle_is_already_triangulated():
    e = embed(cycle(3))
    t = triangulate(e)
    assert not t.synthetic and t.m == 3


def test_is_planar_helper():
    assert is_planar(gen_grid(3, 3))
    assert not is_planar(complete(5))
