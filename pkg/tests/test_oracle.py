"""Ground-truth search: correctness, completeness, budget discipline."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkiso.graphs import Graph, Permutation, apply_permutation, parse_graph6
from walkiso.oracle import (
    BudgetExhausted,
    OracleResult,
    enumerate_labeled_graphs,
    exact_isomorphic,
)

from .oracles import brute_force_isomorphic


def _k(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


ROOK_4X4 = parse_graph6("O~`HW}GPHDaNaGPCcPWaN")
SHRIKHANDE = parse_graph6("OlfJHsHBGK_\\oHWKeBK_\\")


@st.composite
def graph_and_perm(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return Graph(n, frozenset(chosen)), Permutation(tuple(perm))


# ---------------------------------------------------------------------------
# fixed instances


def test_permuted_pair_found_with_verified_witness():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)])
    p = Permutation((3, 0, 2, 4, 1))
    h = apply_permutation(g, p)
    r = exact_isomorphic(g, h)
    assert r.isomorphic
    assert apply_permutation(g, r.mapping) == h  # witness need not equal p


def test_hexagon_vs_two_triangles():
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    r = exact_isomorphic(_cycle(6), two_triangles)
    assert r.isomorphic is False
    assert r.mapping is None


def test_triangle_self():
    r = exact_isomorphic(_k(3), _k(3))
    assert r.isomorphic
    assert apply_permutation(_k(3), r.mapping) == _k(3)


def test_cheap_rejections_explore_nothing():
    assert exact_isomorphic(_k(3), _k(4)) == OracleResult(False, None, 0)
    assert exact_isomorphic(_k(3), Graph.from_edges(3, [(0, 1), (1, 2)])).nodes_explored == 0
    # same degree multiset (1,1,1,2,2,3), different neighbor-degree signatures
    spider = Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)])
    caterpillar = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)])
    r = exact_isomorphic(spider, caterpillar)
    assert r.isomorphic is False
    assert r.nodes_explored == 0


def test_srg_pair_rejected_by_complete_search():
    r = exact_isomorphic(SHRIKHANDE, ROOK_4X4, budget=2_000_000)
    assert r.isomorphic is False
    assert r.nodes_explored > 0  # no shortcut applies; the search ran
    r2 = exact_isomorphic(ROOK_4X4, SHRIKHANDE, budget=2_000_000)
    assert r2.isomorphic is False


def test_budget_exhaustion_raises_not_decides():
    with pytest.raises(BudgetExhausted) as excinfo:
        exact_isomorphic(SHRIKHANDE, ROOK_4X4, budget=100)
    assert excinfo.value.budget == 100
    assert excinfo.value.nodes_explored == 101


def test_node_counts_are_reproducible():
    a = exact_isomorphic(SHRIKHANDE, ROOK_4X4)
    b = exact_isomorphic(SHRIKHANDE, ROOK_4X4)
    assert a.nodes_explored == b.nodes_explored


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=60)
@given(graph_and_perm())
def test_reflexive_and_permuted(gp):
    g, p = gp
    assert exact_isomorphic(g, g).isomorphic
    r = exact_isomorphic(g, apply_permutation(g, p))
    assert r.isomorphic


@settings(max_examples=40, deadline=None)
@given(graph_and_perm(max_n=5), graph_and_perm(max_n=5))
def test_matches_brute_force_and_symmetry(gp1, gp2):
    g1, _ = gp1
    g2, _ = gp2
    r12 = exact_isomorphic(g1, g2)
    r21 = exact_isomorphic(g2, g1)
    assert r12.isomorphic == r21.isomorphic
    assert r12.isomorphic == (brute_force_isomorphic(g1, g2) is not None)


# ---------------------------------------------------------------------------
# enumeration


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_labeled_graphs(1)) == 1
    assert sum(1 for _ in enumerate_labeled_graphs(3)) == 8
    assert sum(1 for _ in enumerate_labeled_graphs(4)) == 64


def test_enumeration_order_and_uniqueness():
    graphs = list(enumerate_labeled_graphs(3))
    assert graphs[0].edges == frozenset()
    assert graphs[-1] == _k(3)
    assert graphs[1].edges == frozenset({(0, 1)})  # bit 0 is the first pair
    assert len(set(graphs)) == 8


def test_enumeration_bounds():
    with pytest.raises(ValueError):
        list(enumerate_labeled_graphs(8))
    with pytest.raises(ValueError):
        list(enumerate_labeled_graphs(0))


def _count_classes(n):
    reps: list[Graph] = []
    for g in enumerate_labeled_graphs(n):
        key = sorted(g.degrees())
        for rep in reps:
            if sorted(rep.degrees()) == key and exact_isomorphic(rep, g).isomorphic:
                break
        else:
            reps.append(g)
    return len(reps)


def test_unlabeled_class_counts_small():
    # published counts of unlabeled simple graphs
    assert _count_classes(1) == 1
    assert _count_classes(2) == 2
    assert _count_classes(3) == 4
    assert _count_classes(4) == 11
