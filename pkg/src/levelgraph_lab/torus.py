"""Level rotation tori: lcms a_i, twist lattices Tw ⊇ sTw, K_Γ and prong-matching orbits."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .graph import Edge, EnhancedLevelGraph
from .lattice import (
    FiniteAbelianGroup,
    IntMatrix,
    cokernel,
    det,
    hermite_normal_form,
    integer_kernel,
    quotient_group,
)


def level_lcms(graph: EnhancedLevelGraph) -> dict[int, int]:
    """a_i = lcm of κ_e over the vertical edges crossing passage i."""
    out = {}
    for i in graph.passages():
        kappas = [e.kappa for e in graph.vertical_edges() if i in graph.crossed_passages(e)]
        if not kappas:
            raise ValueError(f"no edge crosses passage {i}; graph is malformed")
        out[i] = lcm(*kappas)
    return out


def passage_incidence(graph: EnhancedLevelGraph) -> tuple[list[Edge], list[int], IntMatrix]:
    """Vertical edges, passages, and the 0/1 matrix with rows per edge, columns per passage."""
    edges = graph.vertical_edges()
    passages = graph.passages()
    mat = [[int(i in graph.crossed_passages(e)) for i in passages] for e in edges]
    return edges, passages, mat


@dataclass(frozen=True)
class TwistGroupData:
    a: dict[int, int]
    passages: tuple[int, ...]
    tw_basis: IntMatrix
    stw_basis: IntMatrix
    quotient: FiniteAbelianGroup

    def to_dict(self) -> dict:
        return {
            "passages": list(self.passages),
            "a": {str(i): self.a[i] for i in self.passages},
            "tw_basis": self.tw_basis,
            "stw_basis": self.stw_basis,
            "invariant_factors": list(self.quotient.invariant_factors),
        }


def twist_groups(graph: EnhancedLevelGraph) -> TwistGroupData:
    """Tw = {n ∈ Z^L : κ_e | Σ_{i crossed by e} n_i for all vertical e}, sTw = ⊕ a_i Z."""
    a = level_lcms(graph)
    edges, passages, inc = passage_incidence(graph)
    nl, ne = len(passages), len(edges)
    stw = [[a[i] if i == j else 0 for j in passages] for i in passages]
    if nl == 0:
        return TwistGroupData(a, (), [], [], FiniteAbelianGroup())
    # (n, k) ∈ Z^{L+E} with inc·n + diag(κ)·k = 0, projected onto n
    system = [inc[r] + [edges[r].kappa if c == r else 0 for c in range(ne)] for r in range(ne)]
    kernel = integer_kernel(system, nl + ne)
    tw = hermite_normal_form([row[:nl] for row in kernel] + stw)
    return TwistGroupData(a, tuple(passages), tw, stw, quotient_group(tw, stw))


def twist_index(data: TwistGroupData) -> int:
    """[Tw : sTw] from covolumes: Π a_i / |det Tw|."""
    if not data.passages:
        return 1
    idx = det(data.stw_basis) / det(data.tw_basis)
    assert idx.denominator == 1
    return abs(int(idx))


def count_prong_matching_classes(graph: EnhancedLevelGraph) -> int:
    """Orbits of Z^L on Π_{e vertical} Z/κ_e, i.e. |coker [M | diag κ]|."""
    edges, passages, inc = passage_incidence(graph)
    if not edges:
        return 1
    ne = len(edges)
    mat = [inc[r] + [edges[r].kappa if c == r else 0 for c in range(ne)] for r in range(ne)]
    torsion, free = cokernel(mat, ne)
    assert free == 0
    return torsion.order


@dataclass(frozen=True)
class QuotientMap:
    """Exponents of (q_i) ↦ (r_i, ρ_e): one row per output coordinate, one column per q_i."""

    passages: tuple[int, ...]
    edges: tuple[str, ...]
    r_exponents: IntMatrix
    rho_exponents: IntMatrix
    # (edge id, κ_e, passages crossed): ρ_e^{κ_e} = Π r_i over those passages
    relations: tuple[tuple[str, int, tuple[int, ...]], ...]

    @property
    def matrix(self) -> IntMatrix:
        return self.r_exponents + self.rho_exponents

    def relations_hold(self) -> bool:
        for (eid, kappa, crossed), rho in zip(self.relations, self.rho_exponents):
            lhs = [kappa * x for x in rho]
            rhs = [sum(self.r_exponents[self.passages.index(i)][j] for i in crossed) for j in range(len(rho))]
            if lhs != rhs:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "passages": list(self.passages),
            "edges": list(self.edges),
            "r": self.r_exponents,
            "rho": self.rho_exponents,
            "relations": [{"edge": e, "kappa": k, "passages": list(p)} for e, k, p in self.relations],
        }


def quotient_map_exponents(graph: EnhancedLevelGraph) -> QuotientMap:
    a = level_lcms(graph)
    passages = graph.passages()
    edges = graph.vertical_edges()
    r = [[a[i] if i == j else 0 for j in passages] for i in passages]
    rho = []
    for e in edges:
        crossed = graph.crossed_passages(e)
        row = []
        for j in passages:
            if j in crossed:
                q, rem = divmod(a[j], e.kappa)
                assert rem == 0
                row.append(q)
            else:
                row.append(0)
        rho.append(row)
    rel = tuple((e.id, e.kappa, tuple(graph.crossed_passages(e))) for e in edges)
    return QuotientMap(tuple(passages), tuple(e.id for e in edges), r, rho, rel)
