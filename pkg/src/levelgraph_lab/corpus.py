"""Graph corpora: exhaustive genus-0 trees for given orders, and seeded random graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .graph import Edge, EnhancedLevelGraph, Leg, Vertex, canonical_form
from .slopes import level_structure_from_slopes, tree_slopes

# Fixed μ vectors for the property runs: at most six legs, each summing to −2.
DEFAULT_MUS: tuple[tuple[int, ...], ...] = (
    (-1, -1, 0, 0),
    (2, -2, -1, -1),
    (-1, -1, -1, 1),
    (3, -1, -1, -1, -2),
    (1, 0, -1, -1, -1),
    (-1, -1, -1, -1, -1, 3),
    (2, 1, -1, -1, -1, -2),
)


@dataclass(frozen=True)
class CorpusSpec:
    mu: tuple[int, ...]
    max_edges: int | None = None
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))
        if self.genus != 0:
            raise ValueError("only genus 0 corpora are enumerated")
        if sum(self.mu) != 2 * self.genus - 2:
            raise ValueError(f"orders {list(self.mu)} sum to {sum(self.mu)}, need {2 * self.genus - 2}")

    @property
    def n(self) -> int:
        return len(self.mu)


def _splits(n: int) -> list[frozenset[int]]:
    """Leg subsets not containing leg 1 that can sit below an edge of a stable tree."""
    legs = range(2, n + 1)
    return [frozenset(c) for k in range(2, n - 1) for c in combinations(legs, k)]


def _compatible(a: frozenset, b: frozenset) -> bool:
    # both sides avoid leg 1, so only nesting or disjointness is possible
    return a <= b or b <= a or not (a & b)


def _split_systems(splits, max_edges):
    def rec(start, chosen):
        yield list(chosen)
        if max_edges is not None and len(chosen) >= max_edges:
            return
        for k in range(start, len(splits)):
            s = splits[k]
            if all(_compatible(s, t) for t in chosen):
                chosen.append(s)
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def _tree_from_splits(n: int, clusters: list[frozenset[int]], mu: Sequence[int]) -> EnhancedLevelGraph:
    clusters = sorted(clusters, key=lambda s: (len(s), sorted(s)))
    vid = {c: k + 1 for k, c in enumerate(clusters)}

    def home(leg):
        inside = [c for c in clusters if leg in c]
        return vid[min(inside, key=len)] if inside else 0

    edges = []
    for k, c in enumerate(clusters):
        above = [d for d in clusters if c < d]
        parent = vid[min(above, key=len)] if above else 0
        edges.append(Edge(f"e{k + 1}", parent, vid[c], 0))
    verts = [Vertex(v, 0, 0) for v in range(len(clusters) + 1)]
    legs = [Leg(home(i), i, mu[i - 1]) for i in range(1, n + 1)]
    return EnhancedLevelGraph(tuple(verts), tuple(legs), tuple(edges))


def stable_trees(n: int, mu: Sequence[int] | None = None, max_edges: int | None = None) -> Iterator[EnhancedLevelGraph]:
    """Every stable genus-0 tree with legs 1..n, one per compatible split system."""
    mu = tuple(mu) if mu is not None else (0,) * n
    for system in _split_systems(_splits(n), max_edges):
        yield _tree_from_splits(n, system, mu)


def enumerate_genus0_graphs(spec: CorpusSpec) -> Iterator[EnhancedLevelGraph]:
    """Stable trees carrying their slope-induced level structure, without repeats."""
    seen = set()
    for tree in stable_trees(spec.n, spec.mu, spec.max_edges):
        graph = level_structure_from_slopes(tree, tree_slopes(tree))
        key = canonical_form(graph)
        if key in seen:
            continue
        seen.add(key)
        yield graph


def default_corpus(max_edges: int | None = None, mus=DEFAULT_MUS) -> list[EnhancedLevelGraph]:
    out = []
    for mu in mus:
        out.extend(enumerate_genus0_graphs(CorpusSpec(mu, max_edges)))
    return out


# -- random generators ---------------------------------------------------------------


def random_tree(rng: random.Random, max_vertices: int = 6, max_order: int = 4) -> EnhancedLevelGraph:
    """Random stable genus-0 tree with random leg orders summing to −2 (levels all 0)."""
    k = rng.randint(1, max_vertices)
    edges = [Edge(f"e{j}", rng.randrange(j), j, 0) for j in range(1, k)]
    deg = [0] * k
    for e in edges:
        deg[e.upper] += 1
        deg[e.lower] += 1
    homes = []
    for v in range(k):
        homes += [v] * (max(0, 3 - deg[v]) + rng.randint(0, 1))
    rng.shuffle(homes)
    orders = [rng.randint(-max_order, max_order) for _ in homes]
    orders[-1] = -2 - sum(orders[:-1])
    legs = [Leg(v, i + 1, m) for i, (v, m) in enumerate(zip(homes, orders))]
    return EnhancedLevelGraph(tuple(Vertex(v, 0, 0) for v in range(k)), tuple(legs), tuple(edges))


def random_level_graph(
    rng: random.Random, max_levels: int = 4, max_kappa: int = 4, extra_edges: int = 2, genus_prob: float = 0.2
) -> EnhancedLevelGraph:
    """Random admissible enhanced level graph, possibly with cycles and horizontal edges.

    Leg orders are solved from the degree equality at each vertex, so the
    result always passes :func:`validate`.
    """
    nlev = rng.randint(1, max_levels)
    verts = []
    for lev in range(nlev):
        for _ in range(rng.randint(1, 2)):
            verts.append(Vertex(len(verts), int(rng.random() < genus_prob), -lev))
    level = {v.id: v.level for v in verts}
    pairs = []
    order = list(range(len(verts)))
    rng.shuffle(order)
    for k in range(1, len(order)):
        pairs.append((order[k], order[rng.randrange(k)]))
    for _ in range(rng.randint(0, extra_edges)):
        pairs.append((rng.randrange(len(verts)), rng.randrange(len(verts))))
    edges = []
    for j, (a, b) in enumerate(pairs):
        if level[a] < level[b]:
            a, b = b, a
        kappa = 0 if level[a] == level[b] else rng.randint(1, max_kappa)
        edges.append(Edge(f"e{j + 1}", a, b, kappa))

    legs = []
    for v in verts:
        need = 2 * v.genus - 2
        nhalf = 0
        for e in edges:
            for end, sign in ((e.upper, 1), (e.lower, -1)):
                if end != v.id:
                    continue
                nhalf += 1
                if e.kappa == 0:
                    need += 1
                elif sign > 0:
                    need -= e.kappa - 1
                else:
                    need += e.kappa + 1
        count = max(1, 3 - 2 * v.genus - nhalf) + rng.randint(0, 1)
        orders = [rng.randint(-2, 2) for _ in range(count - 1)]
        orders.append(need - sum(orders))
        legs += [(v.id, m) for m in orders]
    rng.shuffle(legs)
    leg_objs = tuple(Leg(v, i + 1, m) for i, (v, m) in enumerate(legs))
    return EnhancedLevelGraph(tuple(verts), leg_objs, tuple(edges))
