"""Exact combinatorics of enhanced level graphs, twist groups, log monoids and blowup fans."""

from .graph import (
    Edge,
    EnhancedLevelGraph,
    GraphStructureError,
    Leg,
    ValidationReport,
    Vertex,
    load_graph,
    subdivide_long_edges,
    undegenerate_horizontal,
    undegenerate_vertical,
    validate,
)
from .ideals import MonomialIdeal, j_ideal, nguyen_ideal
from .lattice import FiniteAbelianGroup, smith_normal_form
from .logmonoid import basic_monoid, relative_inertia
from .polyhedral import Cone, Fan, hyperplane_subdivision, newton_fan
from .slopes import SlopeAssignment, level_structure_from_slopes, multidegree, tree_slopes
from .torus import count_prong_matching_classes, level_lcms, quotient_map_exponents, twist_groups

__version__ = "0.1.0"
