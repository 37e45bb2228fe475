"""Exact rational cones and fans inside the positive orthant.

Cones keep both descriptions: inequalities ``a·x >= 0`` and primitive integer
rays, converted with the double description method.  Only pointed cones
occur, since every cone here lies in the orthant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .graph import EnhancedLevelGraph
from .ideals import MonomialIdeal, edge_variables
from .lattice import coordinates, det, primitive, rank
from .slopes import SlopeAssignment, tree_path, tree_slopes

Vec = tuple[int, ...]


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _solve_square(rows: list[Vec]) -> list[list[Fraction]]:
    """Columns of the inverse of a square matrix, i.e. vectors r_j with rows·r_j = e_j."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [[aug[i][n + j] for i in range(n)] for j in range(n)]


def rays_of(inequalities: Sequence[Sequence[int]], dim: int) -> list[Vec]:
    """Extreme rays of the pointed cone {x : a·x >= 0 for all rows a}.

    Double description: start from a simplicial cone cut out by ``dim``
    independent rows, then add the remaining rows one at a time, combining
    adjacent ray pairs (combinatorial adjacency test).
    """
    rows = [tuple(int(x) for x in a) for a in inequalities if any(a)]
    basis: list[Vec] = []
    for a in rows:
        if rank(basis + [a]) > len(basis):
            basis.append(a)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise ValueError("cone is not pointed (inequalities do not have full rank)")
    processed = list(basis)
    rays = [primitive(r) for r in _solve_square(basis)]
    remaining = [a for a in rows if a not in basis]

    for a in remaining:
        vals = [_dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        tight = {r: frozenset(k for k, b in enumerate(processed) if _dot(b, r) == 0) for r in rays}
        new = []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < dim - 2:
                    continue
                if any(common <= tight[r] for r in rays if r != p and r != q):
                    continue
                vp, vq = _dot(a, p), _dot(a, q)
                new.append(primitive([vp * y - vq * x for x, y in zip(p, q)]))
        processed.append(a)
        rays = sorted(set(pos + zer + new))
    return sorted(set(rays))


def _facets_of(rays: Sequence[Vec], dim: int) -> list[Vec]:
    """Facet normals of a full-dimensional cone from its rays (rays of the dual cone)."""
    return rays_of(rays, dim)


@dataclass(frozen=True)
class Cone:
    dim: int
    rays: tuple[Vec, ...]
    inequalities: tuple[Vec, ...] = field(compare=False)

    @classmethod
    def from_inequalities(cls, inequalities: Iterable[Sequence[int]], dim: int) -> "Cone":
        ineq = tuple(tuple(int(x) for x in a) for a in inequalities)
        return cls(dim, tuple(rays_of(ineq, dim)), ineq)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]], dim: int) -> "Cone":
        rs = tuple(sorted({primitive(r) for r in rays}))
        if rank(rs) != dim:
            raise ValueError("from_rays needs a full-dimensional cone")
        return cls(dim, rs, tuple(_facets_of(rs, dim)))

    @property
    def is_full_dimensional(self) -> bool:
        return rank(self.rays) == self.dim

    def contains_point(self, x: Sequence) -> bool:
        return all(_dot(a, x) >= 0 for a in self.inequalities)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains_point(r) for r in other.rays)

    def interior_point(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.rays))

    def to_dict(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}


def orthant(dim: int) -> Cone:
    return Cone.from_inequalities([tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim)


@dataclass(frozen=True)
class Fan:
    dim: int
    cones: tuple[Cone, ...]
    lattice: tuple[Vec, ...] | None = None

    @property
    def lattice_basis(self) -> list[list]:
        if self.lattice is None:
            return [[int(i == j) for j in range(self.dim)] for i in range(self.dim)]
        return [list(r) for r in self.lattice]

    def to_dict(self) -> dict:
        cones = sorted((c.to_dict() for c in self.cones), key=lambda d: d["rays"])
        return {"dim": self.dim, "lattice": self.lattice_basis, "cones": cones}


def refine_by_hyperplane(fan: Fan, normal: Sequence[int]) -> Fan:
    out = []
    for c in fan.cones:
        vals = [_dot(normal, r) for r in c.rays]
        if min(vals) < 0 < max(vals):
            for sign in (1, -1):
                out.append(Cone.from_inequalities(c.inequalities + (tuple(sign * x for x in normal),), fan.dim))
        else:
            out.append(c)
    return Fan(fan.dim, tuple(out), fan.lattice)


def _normalize_hyperplane(normal: Sequence[int]) -> Vec | None:
    """Primitive normal with first nonzero entry positive; None if it cuts no interior."""
    if not any(normal) or all(x >= 0 for x in normal) or all(x <= 0 for x in normal):
        return None
    p = primitive(normal)
    first = next(x for x in p if x)
    return p if first > 0 else tuple(-x for x in p)


def path_hyperplane(graph: EnhancedLevelGraph, slopes: SlopeAssignment, v: int, w: int) -> Vec:
    """Normal vector Σ_{h ∈ γ} κ(h) e(h) for the path γ from v to w."""
    variables = edge_variables(graph)
    normal = [0] * len(variables)
    for e, departing in tree_path(graph, v, w):
        normal[variables.index(e.id)] += slopes.outgoing(e.id, departing)
    return tuple(normal)


def hyperplane_subdivision(graph: EnhancedLevelGraph, slopes: SlopeAssignment | None = None) -> Fan:
    """Common refinement of the orthant by every L(v, v′) that meets its interior."""
    slopes = slopes or tree_slopes(graph)
    dim = len(graph.edges)
    normals = set()
    for v, w in combinations(graph.vertex_ids, 2):
        h = _normalize_hyperplane(path_hyperplane(graph, slopes, v, w))
        if h is not None:
            normals.add(h)
    fan = Fan(dim, (orthant(dim),))
    for h in sorted(normals):
        fan = refine_by_hyperplane(fan, h)
    return fan


def newton_fan(ideal: MonomialIdeal) -> Fan:
    """Regions of the orthant where a single generator minimizes ⟨m, x⟩."""
    if not ideal.generators:
        raise ValueError("the zero ideal has no Newton polyhedron")
    dim = len(ideal.variables)
    gens = ideal.sorted_generators()
    base = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    cones = []
    for m in gens:
        ineq = base + [tuple(b - a for a, b in zip(m, other)) for other in gens if other != m]
        c = Cone.from_inequalities(ineq, dim)
        if c.is_full_dimensional:
            cones.append(c)
    return Fan(dim, tuple(cones))


def fan_refines(fine: Fan, coarse: Fan) -> bool:
    """Every maximal cone of ``fine`` lies in some maximal cone of ``coarse``."""
    if fine.dim != coarse.dim:
        raise ValueError(f"dimension mismatch {fine.dim} vs {coarse.dim}")
    return all(any(big.contains_cone(small) for big in coarse.cones) for small in fine.cones)


def common_refinement(a: Fan, b: Fan) -> Fan:
    """Full-dimensional pairwise intersections of maximal cones."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch {a.dim} vs {b.dim}")
    out = []
    for c in a.cones:
        for d in b.cones:
            cap = Cone.from_inequalities(c.inequalities + d.inequalities, a.dim)
            if cap.is_full_dimensional:
                out.append(cap)
    return Fan(a.dim, tuple(out), a.lattice)


def fans_equal(a: Fan, b: Fan) -> bool:
    return fan_refines(a, b) and fan_refines(b, a)


def is_locally_principal(ideal: MonomialIdeal, fan: Fan) -> tuple[bool, list[tuple[int, ...] | None]]:
    """Per maximal cone, a generator minimal at every ray (hence on the whole cone)."""
    gens = ideal.sorted_generators()
    chosen = []
    for c in fan.cones:
        vals = {m: [_dot(m, r) for r in c.rays] for m in gens}
        lows = [min(vals[m][k] for m in gens) for k in range(len(c.rays))]
        chosen.append(next((m for m in gens if vals[m] == lows), None))
    return all(m is not None for m in chosen), chosen


def cone_lattice_index(rays: Sequence[Sequence], lattice_basis: Sequence[Sequence] | None = None) -> int:
    """|det| of the rays written in lattice coordinates (1 means a smooth cone)."""
    rays = [[Fraction(x) for x in r] for r in rays]
    dim = len(rays[0]) if rays else 0
    if len(rays) != dim:
        raise ValueError(f"need {dim} rays, got {len(rays)}")
    basis = lattice_basis or [[int(i == j) for j in range(dim)] for i in range(dim)]
    if det(basis) == 0:
        raise ValueError("lattice basis is degenerate")
    if det(rays) == 0:
        raise ValueError("rays are linearly dependent")
    coords = coordinates(basis, rays)
    if any(c.denominator != 1 for row in coords for c in row):
        raise ValueError("rays do not lie in the lattice")
    return abs(int(det(coords)))
