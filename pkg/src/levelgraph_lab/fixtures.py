"""Worked-example graphs used by the tests, the CLI and the README."""

from __future__ import annotations

import json
from importlib import resources

from .graph import Edge, EnhancedLevelGraph, Leg, Vertex


def star_graph() -> EnhancedLevelGraph:
    """Three top vertices with two simple poles each, joined to a bottom vertex carrying the zero of order 4."""
    verts = [Vertex(0, 0, -1)] + [Vertex(i, 0, 0) for i in (1, 2, 3)]
    legs = [Leg(i, 2 * i - 1 + k, -1) for i in (1, 2, 3) for k in (0, 1)] + [Leg(0, 7, 4)]
    edges = [Edge(f"e{i}", i, 0, 1) for i in (1, 2, 3)]
    return EnhancedLevelGraph(tuple(verts), tuple(legs), tuple(edges))


def triangle_graph(n: int) -> EnhancedLevelGraph:
    """Three levels, one vertex each, edges with κ = (1, 1, n); the long edge e3 has κ = n."""
    verts = [Vertex(0, 0, 0), Vertex(1, 0, -1), Vertex(2, 0, -2)]
    legs = [Leg(0, 1, -1 - n), Leg(1, 2, 0), Leg(2, 3, n + 1)]
    edges = [Edge("e1", 0, 1, 1), Edge("e2", 1, 2, 1), Edge("e3", 0, 2, n)]
    return EnhancedLevelGraph(tuple(verts), tuple(legs), tuple(edges))


def two_slope_path_graph() -> EnhancedLevelGraph:
    """Genus-0 path v1 — v0 — v2 with slopes 1 and 2 descending from v0."""
    verts = [Vertex(0, 0, 0), Vertex(1, 0, -1), Vertex(2, 0, -2)]
    legs = [Leg(0, 1, -3), Leg(1, 2, 0), Leg(1, 3, 0), Leg(2, 4, 1), Leg(2, 5, 0)]
    edges = [Edge("e1", 0, 1, 1), Edge("e2", 0, 2, 2)]
    return EnhancedLevelGraph(tuple(verts), tuple(legs), tuple(edges))


def two_level_graph(kappas) -> EnhancedLevelGraph:
    """Top vertex and bottom vertex joined by parallel edges with the given prongs."""
    kappas = list(kappas)
    k = len(kappas)
    top = -2 - sum(x - 1 for x in kappas)
    bottom = sum(x + 1 for x in kappas) - 2
    legs = [Leg(0, 1, top)]
    if k < 2:
        legs.append(Leg(0, 2, 0))
    legs.append(Leg(1, len(legs) + 1, bottom))
    if k < 2:
        legs.append(Leg(1, len(legs) + 1, 0))
    edges = [Edge(f"e{j + 1}", 0, 1, x) for j, x in enumerate(kappas)]
    return EnhancedLevelGraph((Vertex(0, 0, 0), Vertex(1, 0, -1)), tuple(legs), tuple(edges))


FIXTURE_FILES = {"star": "star.json", "triangle3": "triangle_n3.json", "two-slope": "two_slope_path.json"}


def load_fixture(name: str) -> EnhancedLevelGraph:
    text = resources.files("levelgraph_lab.data").joinpath(FIXTURE_FILES[name]).read_text()
    return EnhancedLevelGraph.from_dict(json.loads(text))


def fixture_path(name: str) -> str:
    return str(resources.files("levelgraph_lab.data").joinpath(FIXTURE_FILES[name]))
