"""Multidegrees and the unique slope function on genus-zero trees."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .graph import Edge, EnhancedLevelGraph


@dataclass(frozen=True)
class SlopeAssignment:
    """Outgoing slope on every edge, recorded at a reference endpoint.

    ``slopes[e]`` is κ on the half of ``e`` attached to ``ends[e][0]``; the
    other half carries the negative.
    """

    slopes: Mapping[str, int]
    ends: Mapping[str, tuple[int, int]]
    multidegree: Mapping[int, int]

    def outgoing(self, edge_id: str, vertex: int) -> int:
        ref, other = self.ends[edge_id]
        if vertex == ref:
            return self.slopes[edge_id]
        if vertex == other:
            return -self.slopes[edge_id]
        raise KeyError(f"vertex {vertex} is not an endpoint of edge {edge_id!r}")

    def vertex_sum(self, vertex: int) -> int:
        return sum(self.outgoing(eid, vertex) for eid, ends in self.ends.items() if vertex in ends)

    def to_dict(self) -> dict:
        return {
            "edges": {
                eid: {"from": self.ends[eid][0], "to": self.ends[eid][1], "slope": self.slopes[eid]}
                for eid in sorted(self.slopes)
            },
            "multidegree": {str(v): d for v, d in sorted(self.multidegree.items())},
        }


def multidegree(graph: EnhancedLevelGraph, vid: int) -> int:
    """2g(v) − 2 + #H′(v) − Σ_{j↦v} m_j."""
    v = graph.vertex(vid)
    return 2 * v.genus - 2 + len(graph.half_edges_at(vid)) - sum(l.order for l in graph.legs_at(vid))


def _require_tree(graph: EnhancedLevelGraph) -> None:
    if not graph.is_tree():
        raise ValueError("slopes are unique only on trees; graph has cycles or is disconnected")
    if any(v.genus for v in graph.vertices):
        raise ValueError("tree slopes need every vertex of genus 0")


def tree_slopes(graph: EnhancedLevelGraph) -> SlopeAssignment:
    """The unique κ with Σ_{h at v} κ(h) = d(v) at every vertex (levels and κ_e ignored).

    The slope leaving the far side B of an edge is Σ_{u in B} d(u); we get all
    of them from subtree sums of one rooted traversal.
    """
    _require_tree(graph)
    deg = {v: multidegree(graph, v) for v in graph.vertex_ids}
    root = graph.vertex_ids[0]
    order, parent_edge = [root], {root: None}
    for v in order:
        for e, w in graph.half_edges_at(v):
            if w not in parent_edge:
                parent_edge[w] = e
                order.append(w)
    subtotal = dict(deg)
    slopes, ends = {}, {}
    for v in reversed(order):
        e = parent_edge[v]
        if e is None:
            continue
        parent = e.upper if e.lower == v else e.lower
        subtotal[parent] += subtotal[v]
        # slope at v's half equals the multidegree sum of v's side
        ends[e.id] = (e.upper, e.lower)
        slopes[e.id] = subtotal[v] if v == e.upper else -subtotal[v]
    return SlopeAssignment(slopes, ends, deg)


def tree_path(graph: EnhancedLevelGraph, start: int, end: int) -> list[tuple[Edge, int]]:
    """Edges of the unique path from ``start`` to ``end`` with the vertex each is left from."""
    prev: dict[int, tuple[Edge, int] | None] = {start: None}
    queue = [start]
    for v in queue:
        if v == end:
            break
        for e, w in graph.half_edges_at(v):
            if w not in prev:
                prev[w] = (e, v)
                queue.append(w)
    if end not in prev:
        raise KeyError(f"no path from {start} to {end}")
    path = []
    v = end
    while prev[v] is not None:
        e, u = prev[v]
        path.append((e, u))
        v = u
    return path[::-1]


def level_structure_from_slopes(
    graph: EnhancedLevelGraph, slopes: SlopeAssignment, lengths: Mapping[str, int] | None = None
) -> EnhancedLevelGraph:
    """Integrate slopes into vertex values and turn their order into levels.

    Edge lengths default to 1; only the induced order of values matters.
    Positive outgoing slope means the vertex sits above the far end.
    """
    _require_tree(graph)
    lengths = lengths or {}
    anchor = graph.vertex_ids[0]
    beta = {anchor: 0}
    queue = [anchor]
    for v in queue:
        for e, w in graph.half_edges_at(v):
            if w not in beta:
                beta[w] = beta[v] - slopes.outgoing(e.id, v) * lengths.get(e.id, 1)
                queue.append(w)
    values = sorted(set(beta.values()), reverse=True)
    level = {v: -values.index(b) for v, b in beta.items()}
    verts = tuple(replace(v, level=level[v.id]) for v in graph.vertices)
    edges = []
    for e in graph.edges:
        s = slopes.outgoing(e.id, e.upper)
        if s < 0:
            edges.append(Edge(e.id, e.lower, e.upper, -s))
        else:
            edges.append(Edge(e.id, e.upper, e.lower, s))
    return EnhancedLevelGraph(verts, graph.legs, tuple(edges))
