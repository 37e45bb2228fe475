"""Slow, independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache

from .graph import EnhancedLevelGraph

DEFAULT_MAX_STATES = 10**6


class OracleTooLarge(RuntimeError):
    pass


def max_states() -> int:
    return int(os.environ.get("LEVELGRAPH_LAB_MAX_STATES", DEFAULT_MAX_STATES))


def prong_orbits_bruteforce(graph: EnhancedLevelGraph) -> int:
    """Count orbits of the level rotation action on prong tuples by union-find."""
    edges = graph.vertical_edges()
    if not edges:
        return 1
    kappas = [e.kappa for e in edges]
    size = 1
    for k in kappas:
        size *= k
    if size > max_states():
        raise OracleTooLarge(f"{size} prong states exceed cap {max_states()}")
    moves = []
    for i in graph.passages():
        moves.append([int(i in graph.crossed_passages(e)) for e in edges])

    strides = [1] * len(kappas)
    for j in range(len(kappas) - 2, -1, -1):
        strides[j] = strides[j + 1] * kappas[j + 1]

    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for state in itertools.product(*(range(k) for k in kappas)):
        src = sum(s * st for s, st in zip(state, strides))
        for mv in moves:
            dst = sum(((s + d) % k) * st for s, d, k, st in zip(state, mv, kappas, strides))
            a, b = find(src), find(dst)
            if a != b:
                parent[a] = b
    return sum(1 for x in range(size) if find(x) == x)


def _set_partitions(items: tuple):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [(first,) + part[k]] + part[k + 1 :]
        yield [(first,)] + part


@lru_cache(maxsize=None)
def _rooted_trees(leaves: tuple) -> int:
    """Series-reduced rooted trees on a labelled leaf set (root vertex has ≥ 2 children)."""
    if len(leaves) == 1:
        return 1
    total = 0
    for part in _set_partitions(leaves):
        if len(part) < 2:
            continue
        prod = 1
        for block in part:
            prod *= _rooted_trees(tuple(sorted(block)))
        total += prod
    return total


def count_stable_trees(n: int, max_edges: int | None = None) -> int:
    """Number of stable genus-0 trees with n labelled legs, by recursive set partitions.

    Rooting at leg n turns them into series-reduced rooted trees on the other legs.
    With ``max_edges`` the count is restricted by number of internal edges.
    """
    if n < 3:
        return 0
    if max_edges is None:
        return _rooted_trees(tuple(range(1, n)))
    return sum(c for e, c in _rooted_tree_edge_counts(tuple(range(1, n))).items() if e <= max_edges)


@lru_cache(maxsize=None)
def _rooted_tree_edge_counts(leaves: tuple) -> dict:
    """Same enumeration, tallied by number of internal (non-leaf) edges."""
    if len(leaves) == 1:
        return {0: 1}
    out: dict[int, int] = {}
    for part in _set_partitions(leaves):
        if len(part) < 2:
            continue
        tallies = [{0: 1}]
        for block in part:
            sub = _rooted_tree_edge_counts(tuple(sorted(block)))
            if len(block) > 1:
                sub = {e + 1: c for e, c in sub.items()}
            tallies.append(sub)
        acc = {0: 1}
        for t in tallies[1:]:
            nxt: dict[int, int] = {}
            for e1, c1 in acc.items():
                for e2, c2 in t.items():
                    nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
            acc = nxt
        for e, c in acc.items():
            out[e] = out.get(e, 0) + c
    return out


def slopes_linear_solve(graph: EnhancedLevelGraph) -> dict[str, Fraction]:
    """Solve the flow equations Σ_{h at v} κ(h) = d(v) exactly with sympy.

    Unknown x_e is the slope at the edge's ``upper`` endpoint.
    """
    import sympy

    from .slopes import multidegree

    eids = graph.edge_ids
    if not eids:
        return {}
    xs = sympy.symbols([f"x{k}" for k in range(len(eids))])
    eqs = []
    for v in graph.vertex_ids:
        lhs = 0
        for k, e in enumerate(graph.edges):
            if e.upper == v:
                lhs += xs[k]
            if e.lower == v:
                lhs -= xs[k]
        eqs.append(sympy.Eq(lhs, multidegree(graph, v)))
    sol = sympy.solve(eqs, xs, dict=True)
    if len(sol) != 1 or len(sol[0]) != len(xs):
        raise ValueError("flow equations do not have a unique solution")
    return {eid: Fraction(int(sympy.numer(sol[0][x])), int(sympy.denom(sol[0][x]))) for eid, x in zip(eids, xs)}
