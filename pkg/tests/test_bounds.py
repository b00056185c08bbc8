import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumgraph.acceptance import branch_index_oracle, random_descending_case
from plumgraph.bounds import (BoundsError, apply_descending, branch_indices,
                              descending_audit, descending_change_set, optimize_constants,
                              reorder_cost, theorem2_constants, trivializable_bound)
from plumgraph.diagram import diagram_from_graph, mirror, restrict_to_cycles, standard_plum_diagram
from plumgraph.graph import (PlanarGraph, SpanningTree, all_spanning_trees, build_plum_graph,
                             cube_graph, cycle_graph, random_planar_graph,
                             random_spanning_tree, spanning_tree, star_graph, theta_graph)

from conftest import closed_two_braid

HALF = Fraction(1, 2)


def test_triangle_path_tree():
    g = cycle_graph(3)
    T = SpanningTree(frozenset({0, 1}), 0)
    assert branch_indices(g, T) == {0: 1, 1: 1, 2: 1}
    c = theorem2_constants(g, T)
    assert (c.A, c.B) == (HALF, 0) and c.a == 1


@pytest.mark.parametrize("k", range(3, 9))
def test_cycles_give_half(k):
    g = cycle_graph(k)
    for T in all_spanning_trees(g):
        for r in g.vertices:
            c = theorem2_constants(g, T, r)
            assert (c.A, c.B) == (HALF, 0)
    assert (optimize_constants(g).A, optimize_constants(g).B) == (HALF, 0)


def test_star_reorder_cost():
    g = star_graph(5)
    T = SpanningTree(frozenset(range(5)), 0)
    assert reorder_cost(g, T) == 8
    # every leaf edge has an empty sum at its far end
    assert set(branch_indices(g, T).values()) == {1}


def test_path_tree_has_zero_reorder_cost():
    g = cycle_graph(6)
    assert reorder_cost(g, spanning_tree(g)) == 0


def test_cube_bfs_reorder_cost():
    g = cube_graph()
    T = spanning_tree(g)
    degs = {v: T.degree(v, g) for v in g.vertices}
    expected = sum(((g.degree(v) - 1) // 2) * (degs[v] - 1) for v in g.vertices if degs[v] >= 3)
    assert reorder_cost(g, T) == expected
    assert expected % 2 == 0 and expected >= 2


def planar_k4():
    from itertools import product
    pairs = [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)]
    g = PlanarGraph.from_edges(pairs)
    for flips in product([False, True], repeat=4):
        rot = {v: tuple(reversed(g.rotation[v])) if f else g.rotation[v]
               for v, f in zip(g.vertices, flips)}
        h = PlanarGraph.from_edges(pairs, rotation=rot, sphere=True)
        if not h.violations():
            return h
    raise AssertionError("no planar rotation found")


def test_sparse_graph_counterexample_to_half():
    """K4 has max degree 3; its Hamiltonian-path trees have tree degree <= 2,
    yet no tree or root reaches (1/2, 0)."""
    g = planar_k4()
    T = SpanningTree(frozenset({0, 1, 2}), 0)
    c = theorem2_constants(g, T)
    assert max(c.l.values()) <= 2 and max(g.degree(v) for v in g.vertices) <= 3
    assert c.b == 0 and c.a == 16 and c.A == 8
    assert theorem2_constants(g, T, root=1).a == 9
    best = optimize_constants(g)
    assert (best.A, best.B) == (2, 4)


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_branch_indices_match_oracle(seed):
    rng = random.Random(seed)
    g = random_planar_graph(rng, rng.randint(2, 9), rng.randint(0, 8))
    T = random_spanning_tree(g, rng)
    b = branch_indices(g, T)
    assert b == branch_index_oracle(g, T)
    assert min(b.values()) >= 1
    assert all(b[e.id] == 1 for e in g.edges if e.id not in T.edges)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_constants_properties(seed):
    rng = random.Random(seed)
    g = random_planar_graph(rng, rng.randint(2, 7), rng.randint(0, 6))
    T = random_spanning_tree(g, rng)
    c = theorem2_constants(g, T)
    assert c.A >= HALF and c.B >= 0
    assert c.a == max(c.b_map.values()) ** 2
    assert c.B == Fraction(c.a * c.b, 2)
    assert c.evaluate(10) == c.A * 10 + c.B


def test_optimum_not_worse_than_any_tree():
    for g in (theta_graph(), cube_graph()):
        best = optimize_constants(g)
        for T in all_spanning_trees(g)[:40]:
            c = theorem2_constants(g, T)
            assert (best.A, best.B) <= (c.A, c.B)


def test_optimize_is_deterministic():
    a = optimize_constants(cube_graph())
    b = optimize_constants(cube_graph())
    assert a.to_dict() == b.to_dict()


def test_optimize_cap():
    with pytest.raises(BoundsError):
        optimize_constants(cube_graph(), cap=100)


def test_invalid_tree():
    g = cube_graph()
    with pytest.raises(BoundsError):
        branch_indices(g, SpanningTree(frozenset({0, 1}), 0))


@pytest.mark.parametrize("c,h", [(0, 0), (3, 1), (7, 3), (10, 5)])
def test_trivializable_bound(c, h):
    assert trivializable_bound(c) == h


def test_trivializable_bound_negative():
    with pytest.raises(BoundsError):
        trivializable_bound(-1)


# ---- descending sets ---------------------------------------------------------

def test_trefoil_needs_one_change():
    for d in (closed_two_braid(3), mirror(closed_two_braid(3))):
        r = descending_change_set(d)
        assert len(r.descending) in (1, 2) and r.size == 1


def test_equator_trefoil():
    P = build_plum_graph(1)
    K = restrict_to_cycles(standard_plum_diagram(1), [P.equator])
    assert descending_change_set(K).size == 1


def test_crossing_free():
    d = diagram_from_graph(cycle_graph(4))
    r = descending_change_set(d)
    assert r.changes == () and r.size == 0


def test_five_crossing_braid():
    r = descending_change_set(closed_two_braid(5))
    assert r.size <= 2


def test_link_diagram_audit():
    d = closed_two_braid(4)
    for order in ([0, 1], [1, 0]):
        r = descending_change_set(d, None, order)
        after = apply_descending(d, r)
        assert descending_audit(after, None, order, ascending=r.ascending) == []


def test_tree_edge_crossing_rejected():
    d = closed_two_braid(4)
    with pytest.raises(BoundsError):
        descending_change_set(d, [0], [1])


def test_bad_ordering_rejected():
    with pytest.raises(BoundsError):
        descending_change_set(closed_two_braid(4), None, [0])


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_descending_properties(seed):
    rng = random.Random(seed)
    d, T, order, orient = random_descending_case(rng)
    r = descending_change_set(d, T.edges, order, orient)
    c = len(d)
    assert r.size == min(len(r.descending), c - len(r.descending))
    assert r.size <= trivializable_bound(c)
    after = apply_descending(d, r)
    assert descending_audit(after, T.edges, order, orient, ascending=r.ascending) == []
    # changing exactly the descending set always gives the descending diagram
    from plumgraph.diagram import change_crossings
    assert descending_audit(change_crossings(d, r.descending), T.edges, order, orient) == []
