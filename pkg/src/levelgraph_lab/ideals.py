"""Monomial ideals attached to level graphs: J(Γ), Nguyen's N(Γ) and the h_v ideals.

An ideal is stored by its unique minimal generating set of exponent vectors
over an ordered tuple of variable names.  Edge variables are named by edge id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import EnhancedLevelGraph, contract_edges
from .slopes import SlopeAssignment, tree_path, tree_slopes

Monomial = tuple[int, ...]


def _minimalize(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return frozenset(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    variables: tuple[str, ...]
    generators: frozenset[Monomial]

    def __init__(self, variables: Sequence[str], generators: Iterable[Sequence[int]]):
        variables = tuple(variables)
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != len(variables):
                raise ValueError(f"exponent vector {g} does not match variables {variables}")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in {g}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "generators", _minimalize(gens))

    @classmethod
    def unit(cls, variables: Sequence[str]) -> "MonomialIdeal":
        return cls(variables, [(0,) * len(variables)])

    @classmethod
    def principal(cls, variables: Sequence[str], mono: Sequence[int]) -> "MonomialIdeal":
        return cls(variables, [mono])

    @property
    def is_unit(self) -> bool:
        return (0,) * len(self.variables) in self.generators

    def sorted_generators(self) -> list[Monomial]:
        return sorted(self.generators)

    def _check(self, other: "MonomialIdeal") -> None:
        if self.variables != other.variables:
            raise ValueError(f"variable sets differ: {self.variables} vs {other.variables}")

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.variables, self.generators | other.generators)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(
            self.variables, (tuple(a + b for a, b in zip(g, h)) for g in self.generators for h in other.generators)
        )

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("negative ideal power")
        out = MonomialIdeal.unit(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def contains(self, mono: Sequence[int]) -> bool:
        return any(all(a <= b for a, b in zip(g, mono)) for g in self.generators)

    def gcd_monomial(self) -> Monomial:
        if not self.generators:
            return (0,) * len(self.variables)
        return tuple(min(col) for col in zip(*self.generators))

    def divide(self, mono: Sequence[int]) -> "MonomialIdeal":
        return MonomialIdeal(self.variables, (tuple(a - b for a, b in zip(g, mono)) for g in self.generators))

    def localize(self, variable: str) -> "MonomialIdeal":
        if variable not in self.variables:
            raise KeyError(f"unknown variable {variable!r}")
        k = self.variables.index(variable)
        return MonomialIdeal(self.variables, (g[:k] + (0,) + g[k + 1 :] for g in self.generators))

    def extend(self, variables: Sequence[str]) -> "MonomialIdeal":
        """Same ideal viewed in a larger ring (new variables get exponent 0)."""
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} would be dropped")
        pos = [self.variables.index(v) if v in self.variables else None for v in variables]
        return MonomialIdeal(variables, (tuple(0 if p is None else g[p] for p in pos) for g in self.generators))

    def substitute(self, mapping: Mapping[str, str]) -> "MonomialIdeal":
        """Rename variables; several old names may map to one new name."""
        names = [mapping.get(v, v) for v in self.variables]
        new_vars = tuple(sorted(set(names)))
        idx = [new_vars.index(n) for n in names]
        gens = []
        for g in self.generators:
            out = [0] * len(new_vars)
            for k, x in zip(idx, g):
                out[k] += x
            gens.append(out)
        return MonomialIdeal(new_vars, gens)

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "generators": [list(g) for g in self.sorted_generators()]}

    def __repr__(self) -> str:
        def mono(g):
            parts = [v if x == 1 else f"{v}^{x}" for v, x in zip(self.variables, g) if x]
            return "*".join(parts) or "1"

        return f"({', '.join(mono(g) for g in self.sorted_generators())})"


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return a + b


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return a * b


def ideal_power(a: MonomialIdeal, k: int) -> MonomialIdeal:
    return a**k


def localize(ideal: MonomialIdeal, variable: str) -> MonomialIdeal:
    return ideal.localize(variable)


def equal_up_to_principal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """True iff the ideals agree after removing the gcd monomial of each."""
    a._check(b)
    return a.divide(a.gcd_monomial()).generators == b.divide(b.gcd_monomial()).generators


# -- genus-zero constructions -------------------------------------------------------


def edge_variables(graph: EnhancedLevelGraph) -> tuple[str, ...]:
    return tuple(sorted(graph.edge_ids))


def path_ideal_I(graph: EnhancedLevelGraph, slopes: SlopeAssignment, v: int, w: int) -> Monomial:
    """Π over the half-edges by which the path v → w leaves each vertex of δ^{max(κ,0)}."""
    for x in (v, w):
        graph.vertex(x)
    variables = edge_variables(graph)
    exps = [0] * len(variables)
    for e, departing in tree_path(graph, v, w):
        exps[variables.index(e.id)] += max(slopes.outgoing(e.id, departing), 0)
    return tuple(exps)


def stability_weight(graph: EnhancedLevelGraph, vid: int) -> int:
    """valence − 2 for genus-0 vertices, 2g − 2 + valence in general."""
    return 2 * graph.vertex(vid).genus - 2 + graph.valence(vid)


def _weights(graph: EnhancedLevelGraph) -> dict[int, int]:
    w = {v: stability_weight(graph, v) for v in graph.vertex_ids}
    bad = [v for v, x in w.items() if x <= 0]
    if bad:
        raise ValueError(f"vertices {bad} have non-positive weight (unstable)")
    return w


def pair_ideal_J(graph: EnhancedLevelGraph, slopes: SlopeAssignment, v: int, w: int) -> MonomialIdeal:
    variables = edge_variables(graph)
    return MonomialIdeal(variables, [path_ideal_I(graph, slopes, v, w), path_ideal_I(graph, slopes, w, v)])


def j_ideal(graph: EnhancedLevelGraph, slopes: SlopeAssignment | None = None) -> MonomialIdeal:
    """Π over ordered vertex pairs of (I(v,v′) + I(v′,v))^{w(v) w(v′)}."""
    slopes = slopes or tree_slopes(graph)
    w = _weights(graph)
    out = MonomialIdeal.unit(edge_variables(graph))
    vids = graph.vertex_ids
    for a, v in enumerate(vids):
        for u in vids[a + 1 :]:
            pair = pair_ideal_J(graph, slopes, v, u)
            if pair.is_unit:
                continue
            # (v,u) and (u,v) contribute the same factor
            out = out * pair ** (2 * w[v] * w[u])
    return out


def nguyen_generator(graph: EnhancedLevelGraph, slopes: SlopeAssignment, v: int) -> Monomial:
    """δ_v: each edge weighted by the positive part of κ on its half away from v."""
    dist = {v: 0}
    queue = [v]
    for x in queue:
        for _, y in graph.half_edges_at(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    variables = edge_variables(graph)
    exps = [0] * len(variables)
    for e in graph.edges:
        far = e.upper if dist[e.upper] > dist[e.lower] else e.lower
        exps[variables.index(e.id)] = max(slopes.outgoing(e.id, far), 0)
    return tuple(exps)


def nguyen_ideal(graph: EnhancedLevelGraph, slopes: SlopeAssignment | None = None) -> MonomialIdeal:
    slopes = slopes or tree_slopes(graph)
    return MonomialIdeal(edge_variables(graph), [nguyen_generator(graph, slopes, v) for v in graph.vertex_ids])


def gluing_check(graph: EnhancedLevelGraph, edge_id: str) -> tuple[bool, bool]:
    """(J gluing up to principal factor, N gluing exactly) for contracting one edge."""
    slopes = tree_slopes(graph)
    small = contract_edges(graph, [edge_id])
    variables = edge_variables(graph)
    j_loc = j_ideal(graph, slopes).localize(edge_id)
    j_small = j_ideal(small).extend(variables)
    n_loc = nguyen_ideal(graph, slopes).localize(edge_id)
    n_small = nguyen_ideal(small).extend(variables)
    return equal_up_to_principal(j_loc, j_small), n_loc == n_small


# -- arbitrary genus -----------------------------------------------------------------


def h_variable(vid: int) -> str:
    return f"h{vid}"


def general_genus_j(graph: EnhancedLevelGraph) -> MonomialIdeal:
    """Π over ordered pairs (v, v′), v = v′ included, of (h_v, h_{v′})^{w(v) w(v′)}."""
    w = _weights(graph)
    vids = sorted(graph.vertex_ids)
    variables = tuple(h_variable(v) for v in vids)

    def unit_vec(v):
        return tuple(int(x == v) for x in vids)

    out = MonomialIdeal.unit(variables)
    for a, v in enumerate(vids):
        out = out * MonomialIdeal.principal(variables, unit_vec(v)) ** (w[v] * w[v])
        for u in vids[a + 1 :]:
            out = out * MonomialIdeal(variables, [unit_vec(v), unit_vec(u)]) ** (2 * w[v] * w[u])
    return out


def local_maxima_ideal(graph: EnhancedLevelGraph) -> MonomialIdeal:
    """(h_v : no vertical edge leaves v upwards)."""
    vids = sorted(graph.vertex_ids)
    variables = tuple(h_variable(v) for v in vids)
    below = {e.lower for e in graph.vertical_edges()}
    return MonomialIdeal(variables, [tuple(int(x == v) for x in vids) for v in vids if v not in below])
