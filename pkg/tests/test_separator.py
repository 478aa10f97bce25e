import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle
from planarfvs.generators import gen_grid, gen_random_planar, gen_triangu
from planarfvs.graph import MultiGraph
from planarfvs.separator import SeparatorError, decompose, find_separator, group_components, size_bound


def check_separator(g: MultiGraph, res) -> None:
    n = g.n
    s, a, b = set(res.separator), res.part_a, res.part_b
    assert s | a | b == set(g)
    assert not (s & a) and not (s & b) and not (a & b)
    assert len(a) <= math.ceil(2 * n / 3) and len(b) <= math.ceil(2 * n / 3)
    assert len(s) <= size_bound(n)
    for u, v in g.simple_edges():
        assert not (u in a and v in b) and not (u in b and v in a)


def test_size_bound_values():
    assert size_bound(2) == 4
    assert size_bound(1000) == math.ceil(2 * math.sqrt(2000))


def test_grid_separator():
    g = gen_grid(30, 30)
    res = find_separator(g)
    check_separator(g, res)
    assert res.phase in ("P1", "P2", "P3")


def test_star_uses_one_level():
    g = MultiGraph.from_edges([(0, i) for i in range(1, 30)])
    res = find_separator(g)
    check_separator(g, res)


def test_cycle_phases_are_exercised():
    phases = set()
    for seed in range(80):
        rng = random.Random(seed)
        n = rng.randint(20, 400)
        g = gen_random_planar(n, rng.randint(n - 1, 3 * n - 6), seed)
        res = find_separator(g)
        check_separator(g, res)
        phases.add(res.phase)
    for g in (gen_triangu(300, 1), cycle(50)):
        res = find_separator(g)
        check_separator(g, res)
        phases.add(res.phase)
    assert "P1" in phases


def test_deep_triangulation_hits_cycle_phase():
    # nested triangles: every BFS level is tiny and few, forcing later phases
    edges = []
    k = 80
    for i in range(k):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c), (c, a)]
        if i + 1 < k:
            a2, b2, c2 = a + 3, b + 3, c + 3
            edges += [(a, a2), (b, b2), (c, c2), (a, b2), (b, c2), (c, a2)]
    g = MultiGraph.from_edges(edges)
    check_separator(g, find_separator(g))


def test_rejects_disconnected_and_tiny():
    with pytest.raises(SeparatorError):
        find_separator(MultiGraph.from_edges([(0, 1), (2, 3), (3, 4)]))
    with pytest.raises(SeparatorError):
        find_separator(MultiGraph.from_edges([(0, 1)]))


def test_group_components():
    a, b = group_components([[1, 2, 3], [4, 5], [6]], 4)
    assert len(a) <= 4 and len(b) <= 4 and a | b == set(range(1, 7))
    assert group_components([[1, 2, 3, 4, 5]], 3) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 300), st.floats(0, 1), st.integers(0, 10**6))
def test_separator_invariants_property(n, density, seed):
    m = n - 1 + int(density * (3 * n - 6 - (n - 1)))
    g = gen_random_planar(n, m, seed)
    check_separator(g, find_separator(g))


def test_decompose_leaves_and_separators_partition_the_vertices():
    for g, r in ((gen_grid(20, 20), 60), (cycle(100), 10), (gen_triangu(500, 3), 40)):
        tree = decompose(g, r)
        leaves = tree.leaves()
        assert all(len(x.vertices) <= r for x in leaves)
        covered = [v for x in leaves for v in x.vertices] + [v for s in tree.separators() for v in s]
        assert sorted(covered) == sorted(g)
        assert tree.separator_total == sum(len(s) for s in tree.separators())
        assert tree.c2 == pytest.approx(tree.separator_total * math.sqrt(r) / g.n)
        dump = tree.dump()
        assert dump.splitlines()[0].startswith("node: size=")


def test_decompose_small_graph_is_one_leaf():
    tree = decompose(cycle(10), 60)
    assert tree.root.is_leaf and tree.separator_total == 0


def test_decompose_no_edge_between_leaves():
    g = gen_random_planar(400, 700, 9)
    tree = decompose(g, 30)
    leaf_of = {v: i for i, x in enumerate(tree.leaves()) for v in x.vertices}
    for u, v in g.simple_edges():
        if u in leaf_of and v in leaf_of:
            assert leaf_of[u] == leaf_of[v]


def test_postorder_children_first():
    tree = decompose(gen_grid(15, 15), 20)
    seen = set()
    for node in tree.root.postorder():
        assert all(id(c) in seen for c in node.children)
        seen.add(id(node))
