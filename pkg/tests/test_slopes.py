import random

import pytest
from hypothesis import given, strategies as st

from levelgraph_lab.corpus import random_tree
from levelgraph_lab.fixtures import star_graph, triangle_graph
from levelgraph_lab.graph import Edge, EnhancedLevelGraph, Leg, Vertex, validate
from levelgraph_lab.oracles import slopes_linear_solve
from levelgraph_lab.slopes import level_structure_from_slopes, multidegree, tree_slopes


def test_multidegrees_star():
    g = star_graph()
    assert multidegree(g, 0) == -3
    assert all(multidegree(g, v) == 1 for v in (1, 2, 3))


def test_multidegree_isolated_genus_one():
    g = EnhancedLevelGraph((Vertex(0, 1, 0),), (Leg(0, 1, 0),), ())
    assert multidegree(g, 0) == 0
    with pytest.raises(KeyError):
        multidegree(g, 4)


def test_star_slopes_point_up_to_the_top_vertices():
    s = tree_slopes(star_graph())
    for i in (1, 2, 3):
        assert s.outgoing(f"e{i}", i) == 1
        assert s.outgoing(f"e{i}", 0) == -1


def test_single_vertex_has_empty_assignment():
    g = EnhancedLevelGraph((Vertex(0, 0, 0),), (Leg(0, 1, -1), Leg(0, 2, -1), Leg(0, 3, 0)), ())
    assert tree_slopes(g).slopes == {}


def _two_vertex():
    legs = (Leg(0, 1, -1), Leg(0, 2, -1), Leg(1, 3, 3), Leg(1, 4, -3))
    return EnhancedLevelGraph((Vertex(0, 0, 0), Vertex(1, 0, 0)), legs, (Edge("e", 1, 0, 0),))


def test_two_vertex_tree_slope_and_oracle():
    g = _two_vertex()
    s = tree_slopes(g)
    assert s.multidegree == {0: 1, 1: -1}
    assert s.outgoing("e", 0) == 1
    assert slopes_linear_solve(g)["e"] == s.outgoing("e", g.edge("e").upper)


def test_non_tree_is_rejected():
    with pytest.raises(ValueError):
        tree_slopes(triangle_graph(2))


def test_level_structure_star():
    g = level_structure_from_slopes(star_graph(), tree_slopes(star_graph()))
    assert {v.id: v.level for v in g.vertices} == {0: -1, 1: 0, 2: 0, 3: 0}
    assert all(e.kappa == 1 and e.lower == 0 for e in g.edges)
    assert validate(g).valid


def test_zero_slope_edge_becomes_horizontal():
    legs = (Leg(0, 1, -1), Leg(0, 2, 0), Leg(1, 3, -1), Leg(1, 4, 0))
    g = EnhancedLevelGraph((Vertex(0, 0, 0), Vertex(1, 0, 0)), legs, (Edge("e", 0, 1, 0),))
    out = level_structure_from_slopes(g, tree_slopes(g))
    assert out.levels() == [0] and out.horizontal_edges()
    assert validate(out).valid


def test_path_with_descending_slopes():
    # a -> b -> c with slope 1 on both edges
    legs = (Leg(0, 1, -1), Leg(0, 2, -1), Leg(1, 3, 0), Leg(2, 4, 0), Leg(2, 5, 0))
    g = EnhancedLevelGraph(
        tuple(Vertex(i, 0, 0) for i in range(3)), legs, (Edge("ab", 0, 1, 0), Edge("bc", 1, 2, 0))
    )
    s = tree_slopes(g)
    assert s.outgoing("ab", 0) == 1 and s.outgoing("bc", 1) == 1
    out = level_structure_from_slopes(g, s)
    assert [out.level_of(v) for v in (0, 1, 2)] == [0, -1, -2]


@given(st.integers(0, 10**6))
def test_slope_sums_and_oracle_on_random_trees(seed):
    g = random_tree(random.Random(seed), max_vertices=8)
    s = tree_slopes(g)
    assert sum(s.multidegree.values()) == 0
    for v in g.vertex_ids:
        assert s.vertex_sum(v) == s.multidegree[v]
    oracle = slopes_linear_solve(g)
    for e in g.edges:
        assert oracle[e.id] == s.outgoing(e.id, e.upper)


@given(st.integers(0, 10**6), st.data())
def test_levels_do_not_depend_on_anchor(seed, data):
    g = random_tree(random.Random(seed), max_vertices=6)
    s = tree_slopes(g)
    base = level_structure_from_slopes(g, s)
    anchor = data.draw(st.sampled_from(g.vertex_ids))
    order = [v for v in g.vertices if v.id == anchor] + [v for v in g.vertices if v.id != anchor]
    moved = EnhancedLevelGraph(tuple(order), g.legs, g.edges)
    other = level_structure_from_slopes(moved, s)
    assert {v.id: v.level for v in other.vertices} == {v.id: v.level for v in base.vertices}
    assert validate(base).valid
