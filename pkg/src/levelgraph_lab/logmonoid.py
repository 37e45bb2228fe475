"""Basic (minimal) log monoids of enhanced level graphs and combinatorial PL functions.

Monoid elements are integer vectors over an explicit generator list: the level
generators p_i (one per passage) followed by one free generator per
horizontal edge.  All monoids in scope are free, so membership and division
are coordinate-wise.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .graph import EnhancedLevelGraph
from .lattice import FiniteAbelianGroup, IntMatrix, cokernel
from .torus import level_lcms

Vector = tuple[int, ...]


@dataclass(frozen=True)
class BasicMonoidPresentation:
    passages: tuple[int, ...]
    a: Mapping[int, int]
    vertical_edges: tuple[str, ...]
    horizontal_edges: tuple[str, ...]
    # rows per passage, columns per vertical edge; entry a_i/κ_e where e crosses i
    g_matrix: IntMatrix
    # vertex -> coefficients of β(v) on the level generators
    beta: Mapping[int, Vector]

    @property
    def generators(self) -> list[str]:
        return [f"p{i}" for i in self.passages] + [f"h:{e}" for e in self.horizontal_edges]

    @property
    def psi_symbols(self) -> dict[str, str]:
        """ψ: p_i ↦ τ_i = σ_i / a_i, σ_i being the β-gap across passage i."""
        return {f"p{i}": f"sigma{i}/{self.a[i]}" for i in self.passages}

    def g(self, edge_id: str) -> Vector:
        k = self.vertical_edges.index(edge_id)
        return tuple(row[k] for row in self.g_matrix)

    def edge_lengths(self) -> dict[str, Vector]:
        """Length of every edge in the full generator space."""
        nh = len(self.horizontal_edges)
        out = {e: self.g(e) + (0,) * nh for e in self.vertical_edges}
        for k, e in enumerate(self.horizontal_edges):
            out[e] = (0,) * len(self.passages) + tuple(int(j == k) for j in range(nh))
        return out

    def to_dict(self) -> dict:
        return {
            "generators": self.generators,
            "a": {str(i): self.a[i] for i in self.passages},
            "vertical_edges": list(self.vertical_edges),
            "horizontal_edges": list(self.horizontal_edges),
            "g_matrix": self.g_matrix,
            "beta": {str(v): list(b) for v, b in sorted(self.beta.items())},
            "psi": self.psi_symbols,
        }


def basic_monoid(graph: EnhancedLevelGraph) -> BasicMonoidPresentation:
    """g(e) = Σ_{i crossed} (a_i/κ_e) p_i and β(v) = −Σ_{j=ℓ(v)}^{-1} a_j p_j."""
    a = level_lcms(graph)
    passages = graph.passages()
    vert = graph.vertical_edges()
    gm = [[a[i] // e.kappa if i in graph.crossed_passages(e) else 0 for e in vert] for i in passages]
    beta = {v.id: tuple(-a[j] if v.level <= j else 0 for j in passages) for v in graph.vertices}
    return BasicMonoidPresentation(
        tuple(passages),
        a,
        tuple(e.id for e in vert),
        tuple(e.id for e in graph.horizontal_edges()),
        gm,
        beta,
    )


def check_psi_g_commutes(
    graph: EnhancedLevelGraph, presentation: BasicMonoidPresentation | None = None
) -> tuple[bool, str | None]:
    """Check ψ∘g = δ edge by edge, working in the σ-coordinates.

    ψ(p_i) = σ_i/a_i, so ψ(g(e)) has σ_i-coefficient g_{ie}/a_i, and
    δ_e = (ψβ(e⁺) − ψβ(e⁻))/κ_e.  Returns (True, None) or (False, first bad edge).
    """
    pres = presentation or basic_monoid(graph)

    def psi(vec: Sequence[int]) -> list[Fraction]:
        return [Fraction(x, pres.a[i]) for x, i in zip(vec, pres.passages)]

    for k, eid in enumerate(pres.vertical_edges):
        e = graph.edge(eid)
        lhs = psi([row[k] for row in pres.g_matrix])
        top, bot = psi(pres.beta[e.upper]), psi(pres.beta[e.lower])
        rhs = [(x - y) / e.kappa for x, y in zip(top, bot)]
        if lhs != rhs:
            return False, eid
    return True, None


def relative_inertia(graph: EnhancedLevelGraph) -> FiniteAbelianGroup:
    """Torsion of coker(g^gp: Z^{E^v} → Z^{L})."""
    pres = basic_monoid(graph)
    if not pres.passages:
        return FiniteAbelianGroup()
    torsion, _ = cokernel(pres.g_matrix, len(pres.passages))
    return torsion


# -- combinatorial PL functions ------------------------------------------------------


@dataclass(frozen=True)
class CombinatorialPLFunction:
    values: Mapping[int, Vector]
    # optional κ on non-leg half-edges keyed by (edge id, vertex)
    slopes: Mapping[tuple[str, int], int] = field(default_factory=dict)


@dataclass
class PLReport:
    failures: dict[int, list[str]] = field(default_factory=lambda: {1: [], 2: [], 3: []})

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def passed(self, condition: int) -> bool:
        return not self.failures[condition]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": {str(k): v for k, v in self.failures.items()}}


def _leq(x: Sequence[int], y: Sequence[int]) -> bool:
    return all(b - a >= 0 for a, b in zip(x, y))


def _lt(x: Sequence[int], y: Sequence[int]) -> bool:
    return _leq(x, y) and tuple(x) != tuple(y)


def validate_pl(
    graph: EnhancedLevelGraph, pl: CombinatorialPLFunction, lengths: Mapping[str, Sequence[int]]
) -> PLReport:
    """Check the three conditions describing a point of the rubber space.

    (1) δ_e divides β′(v₂) − β′(v₁) (and matches the recorded slope);
    (2) the image of β′ is totally ordered with maximum 0;
    (3) for y in the image strictly between the endpoint values of e,
        (y − β′(lower end)) / κ_e lies in the monoid.
    """
    rep = PLReport()
    quotient: dict[str, int] = {}
    for e in graph.edges:
        delta = lengths.get(e.id)
        if delta is None or not any(delta) or any(x < 0 for x in delta):
            rep.failures[1].append(f"edge {e.id}: length {delta} is not a nonzero monoid element")
            continue
        diff = [b - a for a, b in zip(pl.values[e.upper], pl.values[e.lower])]
        j = next(k for k, x in enumerate(delta) if x)
        t = Fraction(diff[j], delta[j])
        if t.denominator != 1 or any(d != t * x for d, x in zip(diff, delta)):
            rep.failures[1].append(f"edge {e.id}: length does not divide the value difference")
            continue
        quotient[e.id] = int(t)
        recorded = pl.slopes.get((e.id, e.lower))
        if recorded is not None and recorded != int(t):
            rep.failures[1].append(f"edge {e.id}: recorded slope {recorded} != {int(t)}")

    image = sorted(set(map(tuple, pl.values.values())))
    for x in image:
        for y in image:
            if x < y and not (_leq(x, y) or _leq(y, x)):
                rep.failures[2].append(f"values {list(x)} and {list(y)} are incomparable")
    zero = (0,) * len(image[0]) if image else ()
    if image and (zero not in image or not all(_leq(x, zero) for x in image)):
        rep.failures[2].append("largest value is not 0")

    for e in graph.edges:
        if e.id not in quotient or quotient[e.id] == 0:
            continue
        kappa = abs(quotient[e.id])
        lo, hi = pl.values[e.upper], pl.values[e.lower]
        if _lt(hi, lo):
            lo, hi = hi, lo
        for y in image:
            if _lt(lo, y) and _lt(y, hi):
                step = [b - a for a, b in zip(lo, y)]
                if any(s % kappa or s < 0 for s in step):
                    frac = [str(Fraction(s, kappa)) for s in step]
                    rep.failures[3].append(f"edge {e.id}: ({list(y)} - {list(lo)})/{kappa} = {frac} not in monoid")
    return rep


def basic_pl(graph: EnhancedLevelGraph) -> tuple[CombinatorialPLFunction, dict[str, Vector]]:
    """The PL function and edge lengths of the basic presentation, in its full generator space."""
    pres = basic_monoid(graph)
    nh = len(pres.horizontal_edges)
    values = {v: b + (0,) * nh for v, b in pres.beta.items()}
    return CombinatorialPLFunction(values, graph.half_edge_slopes()), pres.edge_lengths()


def corrupt_g_matrix(pres: BasicMonoidPresentation, row: int, col: int, delta: int = 1) -> BasicMonoidPresentation:
    """Copy of ``pres`` with one g-matrix entry shifted (fault-injection helper)."""
    gm = [list(r) for r in pres.g_matrix]
    gm[row][col] += delta
    return replace(pres, g_matrix=gm)
