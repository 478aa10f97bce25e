import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle
from oracles import oracle_acyclic, random_multigraph
from planarfvs.graph import (
    DegreeIndex,
    FvsSolution,
    GraphError,
    MultiGraph,
    is_acyclic,
    minimal_scan,
    read_edgelist,
    verify_fvs,
    write_edgelist,
)


def test_loop_counts_two_and_is_a_cycle():
    g = MultiGraph.from_edges([(0, 0), (0, 1)])
    assert g.degree(0) == 3
    assert g.has_loop(0)
    assert not is_acyclic(g)
    assert is_acyclic(g, {0})


def test_parallel_pair_is_a_cycle():
    g = MultiGraph.from_edges([(0, 1), (0, 1)])
    assert g.multiplicity(0, 1) == 2
    assert not is_acyclic(g)


def test_multiplicity_cap_discards_extra_copies():
    g = MultiGraph()
    assert g.add_edge(0, 1) is not None
    assert g.add_edge(1, 0) is not None
    assert g.add_edge(0, 1) is None
    assert g.add_edge(2, 2) is not None
    assert g.add_edge(2, 2) is None
    assert g.discarded_edges == 2
    assert g.edge_count == 3
    g.audit()


def test_forest_and_cycle():
    path = MultiGraph.from_edges([(0, 1), (1, 2), (2, 3)])
    assert is_acyclic(path)
    assert not is_acyclic(cycle(5))
    assert is_acyclic(MultiGraph())


def test_verify_rejects_foreign_vertex():
    with pytest.raises(GraphError, match="foreign vertex"):
        verify_fvs(cycle(4), {7})


def test_verify_accepts_solution_objects():
    g = complete(4)
    assert verify_fvs(g, FvsSolution({0, 1}))
    assert not verify_fvs(g, FvsSolution({0}))


def test_delete_vertex_removes_both_sides():
    g = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2), (2, 0)])
    assert sorted(g.delete_vertex(1)) == [0, 2]
    assert 1 not in g
    assert g.m == 1 and g.degree(0) == 1
    g.audit()


def test_ids_are_never_reused():
    g = MultiGraph.from_edges([(0, 1)])
    g.delete_vertex(1)
    assert g.add_vertex() == 2
    g.delete_vertex(2)
    assert g.add_vertex() == 3


def test_contract_degree_two():
    g = MultiGraph.from_edges([(0, 1), (1, 2), (2, 3)])
    g.contract_degree_two(1)
    assert g.multiplicity(0, 2) == 1 and 1 not in g
    # both edges to the same neighbour become a loop there
    h = MultiGraph.from_edges([(0, 1), (0, 1)])
    h.contract_degree_two(1)
    assert h.has_loop(0)
    with pytest.raises(GraphError):
        MultiGraph.from_edges([(0, 1), (0, 2), (0, 3)]).contract_degree_two(0)


def test_delete_edge_by_id():
    g = MultiGraph()
    e = g.add_edge(0, 1)
    g.add_edge(0, 1)
    g.delete_edge(e)
    assert g.multiplicity(0, 1) == 1
    with pytest.raises(GraphError):
        g.delete_edge(e)


def test_subgraph_keeps_ids_and_counter():
    g = MultiGraph.from_edges([(0, 1), (1, 2), (2, 0), (5, 6)])
    s = g.subgraph({0, 1, 5})
    assert sorted(s) == [0, 1, 5] and s.m == 1
    assert s.add_vertex() == 7


def test_degree_index_prefers_high_degree_then_small_id():
    g = MultiGraph.from_edges([(0, 1), (2, 3), (2, 4), (3, 4), (3, 5)])
    idx = DegreeIndex(g)
    assert idx.pop_max() == 3
    assert idx.pop_max() == 2


def test_minimal_scan_rejects_infeasible():
    with pytest.raises(GraphError, match="not a feasible FVS"):
        minimal_scan(cycle(5), set(), [])


def test_edgelist_round_trip():
    g = MultiGraph.from_edges([(0, 1), (0, 1), (2, 2), (1, 2)], vertices=[9])
    buf = io.StringIO()
    write_edgelist(g, buf, "demo")
    h = read_edgelist(buf.getvalue())
    assert sorted(h) == sorted(g)
    assert sorted(h.edge_pairs()) == sorted(g.edge_pairs())


def test_edgelist_errors_report_line():
    with pytest.raises(GraphError, match="line 2"):
        read_edgelist("0 1\nx y\n")
    with pytest.raises(GraphError, match="line 1"):
        read_edgelist("0 1 2\n")


def test_acyclicity_matches_counting_oracle():
    for seed in range(400):
        g = random_multigraph(random.Random(seed))
        rng = random.Random(-seed)
        removed = {v for v in g if rng.random() < 0.3}
        assert is_acyclic(g, removed) == oracle_acyclic(g, removed)


ops = st.lists(
    st.tuples(st.sampled_from(["add", "del_v", "del_e", "contract"]), st.integers(0, 7), st.integers(0, 7)),
    max_size=60,
)


@settings(max_examples=150, deadline=None)
@given(ops)
def test_invariants_survive_any_operation_sequence(seq):
    g = MultiGraph(range(8))
    for op, a, b in seq:
        if op == "add" and a in g and b in g:
            g.add_edge(a, b)
        elif op == "del_v" and a in g:
            g.delete_vertex(a)
        elif op == "del_e":
            es = g.edges()
            if es:
                g.delete_edge(es[(a * 8 + b) % len(es)][0])
        elif op == "contract" and a in g and g.degree(a) == 2 and not g.has_loop(a):
            g.contract_degree_two(a)
        g.audit()
        assert 2 * g.m == sum(g.degree(v) for v in g)
