import itertools
import random
from math import lcm, prod

import pytest
from hypothesis import given, strategies as st

from levelgraph_lab.corpus import random_level_graph
from levelgraph_lab.fixtures import triangle_graph, two_level_graph
from levelgraph_lab.graph import Edge, EnhancedLevelGraph, Leg, Vertex, subdivide_long_edges, validate
from levelgraph_lab.lattice import coordinates
from levelgraph_lab.oracles import OracleTooLarge, prong_orbits_bruteforce
from levelgraph_lab.torus import (
    count_prong_matching_classes,
    level_lcms,
    quotient_map_exponents,
    twist_groups,
    twist_index,
)


def _in_lattice(basis, vec):
    return all(c.denominator == 1 for c in coordinates(basis, [vec])[0])


def _tw_points_in_box(graph):
    """Brute force: elements of Tw in the fundamental box of sTw."""
    a = level_lcms(graph)
    passages = graph.passages()
    count = 0
    for n in itertools.product(*(range(a[i]) for i in passages)):
        val = dict(zip(passages, n))
        if all(sum(val[i] for i in graph.crossed_passages(e)) % e.kappa == 0 for e in graph.vertical_edges()):
            count += 1
    return count


def test_level_lcms_examples():
    assert level_lcms(triangle_graph(4)) == {-1: 4, -2: 4}
    assert level_lcms(two_level_graph([2, 3])) == {-1: 6}
    assert level_lcms(two_level_graph([1])) == {-1: 1}


def test_uncrossed_passage_is_rejected():
    verts = (Vertex(0, 0, 0), Vertex(1, 0, -1), Vertex(2, 0, -2))
    legs = (Leg(0, 1, -1), Leg(0, 2, -1), Leg(1, 3, 0), Leg(1, 4, 0), Leg(2, 5, 0), Leg(2, 6, 0))
    g = EnhancedLevelGraph(verts, legs, (Edge("e", 0, 1, 1),))
    with pytest.raises(ValueError):
        level_lcms(g)


@pytest.mark.parametrize("n", range(2, 8))
def test_triangle_twist_groups(n):
    t = twist_groups(triangle_graph(n))
    assert t.stw_basis == [[n, 0], [0, n]]
    assert _in_lattice(t.tw_basis, [1, -1])
    assert _in_lattice(t.tw_basis, [n, 0]) and _in_lattice(t.tw_basis, [0, n])
    # generated by sTw and (1, -1): index n in Z^2 on both sides
    assert abs(t.tw_basis[0][0] * t.tw_basis[1][1] - t.tw_basis[0][1] * t.tw_basis[1][0]) == n
    assert t.quotient.invariant_factors == (n,)
    assert twist_index(t) == n == _tw_points_in_box(triangle_graph(n))


def test_single_passage_edges_give_trivial_quotient():
    assert twist_groups(subdivide_long_edges(triangle_graph(6))).quotient.is_trivial
    for kappas in ([2, 3], [4, 6, 2], [5]):
        assert twist_groups(two_level_graph(kappas)).quotient.is_trivial


@pytest.mark.parametrize("kappas,expected", [([2, 2], 2), ([2, 3], 1), ([4, 6], 2), ([3, 3, 3], 9)])
def test_prong_counts_two_level(kappas, expected):
    g = two_level_graph(kappas)
    assert validate(g).valid
    assert count_prong_matching_classes(g) == expected == prod(kappas) // lcm(*kappas)
    assert prong_orbits_bruteforce(g) == expected


def test_triangle_has_one_prong_class():
    for n in (2, 3, 5):
        assert count_prong_matching_classes(triangle_graph(n)) == 1 == prong_orbits_bruteforce(triangle_graph(n))


def test_brute_force_cap(monkeypatch):
    monkeypatch.setenv("LEVELGRAPH_LAB_MAX_STATES", "10")
    with pytest.raises(OracleTooLarge):
        prong_orbits_bruteforce(two_level_graph([4, 4]))


def test_quotient_map_triangle_three():
    q = quotient_map_exponents(triangle_graph(3))
    # columns: (t, t'); rows s_-1, s_-2, f_1, f_2, f_3
    assert q.matrix == [[3, 0], [0, 3], [3, 0], [0, 3], [1, 1]]
    assert q.relations_hold()


def test_quotient_map_small_cases():
    q = quotient_map_exponents(two_level_graph([1]))
    assert q.matrix == [[1], [1]]
    q = quotient_map_exponents(two_level_graph([2, 3]))
    assert q.r_exponents == [[6]] and q.rho_exponents == [[3], [2]]
    assert q.relations_hold()


@given(st.integers(0, 10**6))
def test_random_graph_lattice_properties(seed):
    g = random_level_graph(random.Random(seed))
    if not g.passages():
        return
    t = twist_groups(g)
    for row in t.stw_basis:
        assert _in_lattice(t.tw_basis, row)
    for row in t.tw_basis:
        val = dict(zip(t.passages, row))
        assert all(sum(val[i] for i in g.crossed_passages(e)) % e.kappa == 0 for e in g.vertical_edges())
    assert t.quotient.order == twist_index(t) == _tw_points_in_box(g)
    q = quotient_map_exponents(g)
    assert q.relations_hold()
    assert all(x > 0 for row, e in zip(q.rho_exponents, g.vertical_edges()) for x in row if x) and all(
        sum(1 for x in row if x) == len(g.crossed_passages(e)) for row, e in zip(q.rho_exponents, g.vertical_edges())
    )
    if prod(e.kappa for e in g.vertical_edges()) <= 2000:
        assert count_prong_matching_classes(g) == prong_orbits_bruteforce(g)
