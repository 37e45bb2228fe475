"""Enhanced level graphs: data model, admissibility checks and undegenerations.

Levels are non-positive integers with the top level equal to 0.  Passage ``i``
(for ``i`` in ``-1 .. -N``) is the gap between level ``i + 1`` and level ``i``;
a vertical edge crosses passage ``i`` when ``level(lower) <= i < level(upper)``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Iterator


class GraphStructureError(ValueError):
    """Malformed graph data (dangling ids, duplicates, empty vertex set)."""


@dataclass(frozen=True)
class Vertex:
    id: int
    genus: int
    level: int
    semistable: bool = False


@dataclass(frozen=True)
class Leg:
    vertex: int
    marking: int
    order: int


@dataclass(frozen=True)
class Edge:
    id: str
    upper: int
    lower: int
    kappa: int


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "where": self.where, "message": self.message}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    # vertex id -> (left-hand side of the degree equality, 2g(v) - 2)
    degree_checks: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
            "degree_checks": {
                str(v): {"lhs": lhs, "rhs": rhs} for v, (lhs, rhs) in sorted(self.degree_checks.items())
            },
        }


@dataclass(frozen=True)
class EnhancedLevelGraph:
    """Immutable enhanced level graph.

    Construction only checks structural well-formedness; admissibility is the
    job of :func:`validate`.  Edges are stored with an ``upper`` and a
    ``lower`` endpoint; for horizontal edges the two labels are arbitrary.
    """

    vertices: tuple[Vertex, ...]
    legs: tuple[Leg, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "legs", tuple(self.legs))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise GraphStructureError("vertex list is empty")
        ids = [v.id for v in self.vertices]
        dup = [i for i, c in Counter(ids).items() if c > 1]
        if dup:
            raise GraphStructureError(f"duplicate vertex id {dup[0]}")
        known = set(ids)
        eids = [e.id for e in self.edges]
        dup_e = [i for i, c in Counter(eids).items() if c > 1]
        if dup_e:
            raise GraphStructureError(f"duplicate edge id {dup_e[0]!r}")
        for leg in self.legs:
            if leg.vertex not in known:
                raise GraphStructureError(f"leg {leg.marking} attached to unknown vertex {leg.vertex}")
        for e in self.edges:
            for end in (e.upper, e.lower):
                if end not in known:
                    raise GraphStructureError(f"edge {e.id!r} references unknown vertex {end}")

    # -- lookups -------------------------------------------------------------

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(f"unknown vertex {vid}")

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"unknown edge {eid!r}")

    @property
    def vertex_ids(self) -> list[int]:
        return [v.id for v in self.vertices]

    @property
    def edge_ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def level_of(self, vid: int) -> int:
        return self.vertex(vid).level

    def levels(self) -> list[int]:
        """All levels, top first."""
        return sorted({v.level for v in self.vertices}, reverse=True)

    def passages(self) -> list[int]:
        """Level passages ``-1, -2, ..., -N`` (the set L(Γ))."""
        return [lv for lv in self.levels() if lv < 0]

    def is_horizontal(self, e: Edge) -> bool:
        return self.level_of(e.upper) == self.level_of(e.lower)

    def vertical_edges(self) -> list[Edge]:
        return [e for e in self.edges if not self.is_horizontal(e)]

    def horizontal_edges(self) -> list[Edge]:
        return [e for e in self.edges if self.is_horizontal(e)]

    def crossed_passages(self, e: Edge) -> list[int]:
        top, bot = self.level_of(e.upper), self.level_of(e.lower)
        return [i for i in range(top - 1, bot - 1, -1)]

    def legs_at(self, vid: int) -> list[Leg]:
        return [leg for leg in self.legs if leg.vertex == vid]

    def half_edges_at(self, vid: int) -> list[tuple[Edge, int]]:
        """Non-leg half-edges at ``vid`` as (edge, other endpoint); loops appear twice."""
        out = []
        for e in self.edges:
            if e.upper == vid:
                out.append((e, e.lower))
            if e.lower == vid:
                out.append((e, e.upper))
        return out

    def valence(self, vid: int) -> int:
        return len(self.legs_at(vid)) + len(self.half_edges_at(vid))

    def betti_number(self) -> int:
        return len(self.edges) - len(self.vertices) + self.num_components()

    def num_components(self) -> int:
        parent = {v: v for v in self.vertex_ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.upper)] = find(e.lower)
        return len({find(v) for v in self.vertex_ids})

    def total_genus(self) -> int:
        return sum(v.genus for v in self.vertices) + self.betti_number()

    def is_tree(self) -> bool:
        return self.num_components() == 1 and len(self.edges) == len(self.vertices) - 1

    def neighbours(self, vid: int) -> Iterator[tuple[Edge, int]]:
        yield from self.half_edges_at(vid)

    def half_edge_slopes(self) -> dict[tuple[str, int], int]:
        """κ on non-leg half-edges, keyed by (edge id, attached vertex).

        Upper half gets +κ_e, lower half -κ_e, horizontal halves 0.
        Loops (always horizontal here) get a single zero entry.
        """
        out = {}
        for e in self.edges:
            if self.is_horizontal(e):
                out[(e.id, e.upper)] = 0
                out[(e.id, e.lower)] = 0
            else:
                out[(e.id, e.upper)] = e.kappa
                out[(e.id, e.lower)] = -e.kappa
        return out

    # -- (de)serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        verts = []
        for v in self.vertices:
            d = {"id": v.id, "genus": v.genus, "level": v.level}
            if v.semistable:
                d["semistable"] = True
            verts.append(d)
        return {
            "vertices": verts,
            "legs": [{"vertex": l.vertex, "marking": l.marking, "order": l.order} for l in self.legs],
            "edges": [{"id": e.id, "upper": e.upper, "lower": e.lower, "kappa": e.kappa} for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "EnhancedLevelGraph":
        if not isinstance(data, dict):
            raise GraphStructureError("graph JSON must be an object")
        try:
            verts = [
                Vertex(int(v["id"]), int(v["genus"]), int(v["level"]), bool(v.get("semistable", False)))
                for v in data.get("vertices", [])
            ]
            legs = [Leg(int(l["vertex"]), int(l["marking"]), int(l["order"])) for l in data.get("legs", [])]
            edges = [
                Edge(str(e["id"]), int(e["upper"]), int(e["lower"]), int(e["kappa"])) for e in data.get("edges", [])
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphStructureError(f"malformed graph field: {exc}") from exc
        return cls(tuple(verts), tuple(legs), tuple(edges))


def load_graph(source: str | IO[str]) -> EnhancedLevelGraph:
    """Read a graph from a path or an open text stream (structural checks only)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphStructureError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return EnhancedLevelGraph.from_dict(data)


# -- admissibility ---------------------------------------------------------------


def degree_lhs(graph: EnhancedLevelGraph, vid: int) -> int:
    """Σ m_j + Σ_{E⁺(v)} (κ_e − 1) − Σ_{E⁻(v)} (1 + κ_e) − h(v)."""
    total = sum(leg.order for leg in graph.legs_at(vid))
    for e in graph.edges:
        if graph.is_horizontal(e):
            total -= (e.upper == vid) + (e.lower == vid)
            continue
        if e.upper == vid:
            total += e.kappa - 1
        if e.lower == vid:
            total -= 1 + e.kappa
    return total


def validate(graph: EnhancedLevelGraph) -> ValidationReport:
    """Check every admissibility invariant; never raises for well-formed input."""
    rep = ValidationReport()
    add = lambda kind, where, msg: rep.violations.append(Violation(kind, where, msg))

    if graph.num_components() != 1:
        add("connectivity", "graph", f"graph has {graph.num_components()} components")

    for v in graph.vertices:
        if v.genus < 0:
            add("genus", f"vertex {v.id}", f"negative genus {v.genus}")
        if v.level > 0:
            add("level", f"vertex {v.id}", f"positive level {v.level}")
        if not v.semistable and 2 * v.genus - 2 + graph.valence(v.id) <= 0:
            add("stability", f"vertex {v.id}", f"2g-2+valence = {2 * v.genus - 2 + graph.valence(v.id)} <= 0")

    levels = graph.levels()
    if levels != list(range(0, -len(levels), -1)):
        add("levels", "graph", f"levels {levels} are not 0, -1, ..., -N")

    for e in graph.edges:
        top, bot = graph.level_of(e.upper), graph.level_of(e.lower)
        if top == bot:
            if e.kappa != 0:
                add("kappa", f"edge {e.id}", f"horizontal edge has kappa {e.kappa} != 0")
        elif top < bot:
            add("orientation", f"edge {e.id}", f"upper end level {top} below lower end level {bot}")
        elif e.kappa <= 0:
            add("kappa", f"edge {e.id}", f"vertical edge has kappa {e.kappa} <= 0")

    marks = sorted(leg.marking for leg in graph.legs)
    if marks != list(range(1, len(marks) + 1)):
        add("markings", "legs", f"markings {marks} are not a permutation of 1..{len(marks)}")

    g = graph.total_genus()
    total = sum(leg.order for leg in graph.legs)
    if total != 2 * g - 2:
        add("total-degree", "legs", f"sum of orders {total} != 2g-2 = {2 * g - 2}")

    for v in graph.vertices:
        lhs, rhs = degree_lhs(graph, v.id), 2 * v.genus - 2
        rep.degree_checks[v.id] = (lhs, rhs)
        if lhs != rhs:
            add("degree", f"vertex {v.id}", f"degree equality fails: {lhs} != {rhs}")
    return rep


# -- contractions ----------------------------------------------------------------


def _contract(graph: EnhancedLevelGraph, contract_ids: Iterable[str], new_level) -> EnhancedLevelGraph:
    """Contract the given edges; merged vertices keep the smallest id.

    ``new_level`` maps an old level to the output level; it must be constant on
    each merged class.
    """
    contract_ids = set(contract_ids)
    parent = {v: v for v in graph.vertex_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    extra_genus: dict[int, int] = defaultdict(int)
    for e in graph.edges:
        if e.id not in contract_ids:
            continue
        a, b = find(e.upper), find(e.lower)
        if a == b:
            extra_genus[a] += 1  # contracting a cycle-closing edge adds a handle
        else:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            extra_genus[lo] += extra_genus.pop(hi, 0)

    classes: dict[int, list[Vertex]] = defaultdict(list)
    for v in graph.vertices:
        classes[find(v.id)].append(v)
    verts = []
    for root, members in sorted(classes.items()):
        lvls = {new_level(m.level) for m in members}
        assert len(lvls) == 1, "merged vertices land on different levels"
        verts.append(
            Vertex(
                root,
                sum(m.genus for m in members) + extra_genus.get(root, 0),
                lvls.pop(),
                all(m.semistable for m in members) and len(members) == 1,
            )
        )
    legs = tuple(replace(leg, vertex=find(leg.vertex)) for leg in graph.legs)
    edges = tuple(
        replace(e, upper=find(e.upper), lower=find(e.lower)) for e in graph.edges if e.id not in contract_ids
    )
    return EnhancedLevelGraph(tuple(verts), legs, edges)


def undegenerate_vertical(graph: EnhancedLevelGraph, keep: Iterable[int]) -> EnhancedLevelGraph:
    """Keep the vertical edges crossing a passage in ``keep``; contract the rest."""
    keep = set(keep)
    bad = keep - set(graph.passages())
    if bad:
        raise ValueError(f"levels {sorted(bad)} are not passages of the graph")
    doomed = [e.id for e in graph.vertical_edges() if not keep.intersection(graph.crossed_passages(e))]
    return _contract(graph, doomed, lambda lv: -sum(1 for i in keep if lv <= i))


def undegenerate_horizontal(graph: EnhancedLevelGraph, keep: Iterable[str]) -> EnhancedLevelGraph:
    keep = set(keep)
    horiz = {e.id for e in graph.horizontal_edges()}
    stray = keep - horiz
    if stray:
        raise ValueError(f"edges {sorted(stray)} are not horizontal edges of the graph")
    return _contract(graph, horiz - keep, lambda lv: lv)


def contract_edges(graph: EnhancedLevelGraph, edge_ids: Iterable[str]) -> EnhancedLevelGraph:
    """Plain contraction ignoring level data (levels are left as the merged class maximum).

    Used on level-free stable trees where all levels are 0.
    """
    edge_ids = set(edge_ids)
    unknown = edge_ids - set(graph.edge_ids)
    if unknown:
        raise KeyError(f"unknown edges {sorted(unknown)}")
    flat = EnhancedLevelGraph(
        tuple(replace(v, level=0) for v in graph.vertices), graph.legs, tuple(replace(e, kappa=0) for e in graph.edges)
    )
    return _contract(flat, edge_ids, lambda lv: lv)


def subdivide_long_edges(graph: EnhancedLevelGraph) -> EnhancedLevelGraph:
    """Split each edge crossing k > 1 passages into k edges of the same κ.

    Inserted genus-0 vertices sit on the intermediate levels and carry the
    ``semistable`` flag.  New edge ids are ``"<id>/1"``, ``"<id>/2"``, ...
    from the top down.
    """
    next_id = max(graph.vertex_ids) + 1
    verts = list(graph.vertices)
    edges = []
    for e in graph.edges:
        crossed = graph.crossed_passages(e)
        if len(crossed) <= 1:
            edges.append(e)
            continue
        chain = [e.upper]
        for lv in crossed[:-1]:
            verts.append(Vertex(next_id, 0, lv, semistable=True))
            chain.append(next_id)
            next_id += 1
        chain.append(e.lower)
        for k, (u, w) in enumerate(zip(chain, chain[1:]), start=1):
            edges.append(Edge(f"{e.id}/{k}", u, w, e.kappa))
    return EnhancedLevelGraph(tuple(verts), graph.legs, tuple(edges))


# -- canonical labelling -----------------------------------------------------------


def _vertex_colour(graph: EnhancedLevelGraph, v: Vertex) -> tuple:
    legs = tuple(sorted((l.marking, l.order) for l in graph.legs_at(v.id)))
    return (v.level, v.genus, v.semistable, legs, len(graph.half_edges_at(v.id)))


def canonical_form(graph: EnhancedLevelGraph, limit: int = 100_000) -> tuple:
    """Invariant of the graph up to renaming vertices and edges (legs stay labelled).

    Colours are refined by neighbourhoods; remaining ties are broken by trying
    every ordering within colour classes (bounded by ``limit``).
    """
    colour = {v.id: _vertex_colour(graph, v) for v in graph.vertices}
    for _ in range(len(graph.vertices)):
        sig = {}
        for v in graph.vertex_ids:
            nb = sorted(
                (colour[w], graph.is_horizontal(e), e.kappa, e.upper == v) for e, w in graph.half_edges_at(v)
            )
            sig[v] = (colour[v], tuple(nb))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in graph.vertex_ids}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    classes: dict = defaultdict(list)
    for v in graph.vertex_ids:
        classes[colour[v]].append(v)
    keys = sorted(classes)
    base = tuple(_vertex_colour(graph, graph.vertex(classes[k][0])) for k in keys for _ in classes[k])

    best = None
    count = 0
    for perms in itertools.product(*(itertools.permutations(classes[k]) for k in keys)):
        order = [v for p in perms for v in p]
        pos = {v: i for i, v in enumerate(order)}
        enc = tuple(
            sorted(
                (*sorted((pos[e.upper], pos[e.lower])), 0) if graph.is_horizontal(e) else (pos[e.upper], pos[e.lower], e.kappa)
                for e in graph.edges
            )
        )
        if best is None or enc < best:
            best = enc
        count += 1
        if count >= limit:
            break
    return (base, best)


def isomorphic(a: EnhancedLevelGraph, b: EnhancedLevelGraph) -> bool:
    return canonical_form(a) == canonical_form(b)
