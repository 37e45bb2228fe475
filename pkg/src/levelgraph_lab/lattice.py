"""Integer lattice algebra: Smith and Hermite normal forms, kernels, quotients.

Matrices are plain row-major sequences of Python ints, so arithmetic is exact
and unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d₁ ⊕ … ⊕ Z/d_k with d₁ | d₂ | … and every dⱼ ≥ 2."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        inv = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", inv)
        if any(d < 2 for d in inv):
            raise ValueError(f"invariant factors must be >= 2, got {inv}")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"invariant factors {inv} do not form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U·M·V = D, U and V unimodular, D diagonal with d₁ | d₂ | ….

    Pivots are always the smallest nonzero absolute value available.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        for mat in (a, u):
            mat[dst] = [x - q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, q):
        for mat in (a, v):
            for row in mat:
                row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def diagonal(d: Sequence[Sequence[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form (including 1s)."""
    if not m or not m[0]:
        return []
    _, d, _ = smith_normal_form(m)
    return [x for x in diagonal(d) if x]


def cokernel(m: Sequence[Sequence[int]], rows: int) -> tuple[FiniteAbelianGroup, int]:
    """Z^rows / (column span of m) as (torsion part, free rank)."""
    if not m or not m[0]:
        return FiniteAbelianGroup(), rows
    diag = invariant_factors(m)
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1)), rows - len(diag)


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis (as rows) of {x ∈ Z^n : M x = 0}."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return identity(n)
    _, d, v = smith_normal_form(m)
    r = sum(1 for x in diagonal(d) if x)
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def hermite_normal_form(gens: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style HNF basis of the lattice spanned by ``gens``.

    Rows are in echelon form with positive pivots and entries above each pivot
    reduced into [0, pivot).  Zero rows are dropped, so the result is a basis.
    """
    a = [list(map(int, r)) for r in gens if any(r)]
    n = len(a[0]) if a else 0
    out: IntMatrix = []
    for col in range(n):
        live = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            reduced = [[x - (r[col] // p[col]) * y for x, y in zip(r, p)] for r in live[1:]]
            rest += [r for r in reduced if not r[col] and any(r)]
            live = [p] + [r for r in reduced if r[col]]
        if live:
            p = live[0]
            out.append([-x for x in p] if p[col] < 0 else p)
        a = rest
    for i in range(len(out)):
        pc = next(c for c, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def _frac_solve_rows(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction]:
    """Coordinates c with Σ c_k basis[k] = target (basis square, invertible)."""
    n = len(basis)
    # augmented system Bᵀ c = target
    aug = [[Fraction(basis[k][i]) for k in range(n)] + [Fraction(target[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("basis is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


def coordinates(basis: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    return [_frac_solve_rows(basis, v) for v in vectors]


def quotient_group(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]]) -> FiniteAbelianGroup:
    """big / small for full-rank lattices small ⊆ big (both given by basis rows)."""
    coords = coordinates(big, small)
    if any(c.denominator != 1 for row in coords for c in row):
        raise ValueError("small lattice is not contained in the big one")
    mat = [[int(c) for c in row] for row in coords]
    return FiniteAbelianGroup(tuple(d for d in invariant_factors(mat) if d > 1))


def det(m: Sequence[Sequence[Fraction | int]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        out *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return out


def rank(m: Sequence[Sequence[Fraction | int]]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def primitive(vec: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    lcm_den = 1
    for x in fr:
        lcm_den = lcm_den * x.denominator // gcd(lcm_den, x.denominator)
    ints = [int(x * lcm_den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in ints)
