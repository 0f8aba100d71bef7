"""Exact tools for the arc-weighted second neighborhood conjecture."""

from ._accel import backend
from .graph import (
    ArcWeightedDigraph,
    InstanceError,
    NeighborhoodSets,
    VertexWeighting,
    every_arc_in_triangle,
    is_tournament,
    neighborhoods,
    parse_digraph,
    parse_instance,
    reverse,
    serialize_digraph,
)
from .lp import (
    FarkasCertificate,
    arc_weighted_losing_density,
    build_farkas_system,
    dichotomy,
    lp_feasible,
    losing_density,
    verify_certificate,
)
from .orders import MedianOrder, backward_weight, last_vertex_seymour, median_order
from .transforms import (
    AuxiliaryExpansion,
    arc_weights_from_vertex_weights,
    blowup,
    contract,
    drop_zero_arcs,
    expand_auxiliary,
    rationalize_and_scale,
)
from .weights import (
    NeighborhoodReport,
    alpha,
    beta_term,
    report,
    seymour_vertices_arc,
    seymour_vertices_unweighted,
    seymour_vertices_vw,
)

__version__ = "0.1.0"

__all__ = [
    "ArcWeightedDigraph",
    "AuxiliaryExpansion",
    "FarkasCertificate",
    "InstanceError",
    "MedianOrder",
    "NeighborhoodReport",
    "NeighborhoodSets",
    "VertexWeighting",
    "alpha",
    "arc_weighted_losing_density",
    "arc_weights_from_vertex_weights",
    "backend",
    "backward_weight",
    "beta_term",
    "blowup",
    "build_farkas_system",
    "contract",
    "dichotomy",
    "drop_zero_arcs",
    "every_arc_in_triangle",
    "expand_auxiliary",
    "is_tournament",
    "last_vertex_seymour",
    "losing_density",
    "lp_feasible",
    "median_order",
    "neighborhoods",
    "parse_digraph",
    "parse_instance",
    "rationalize_and_scale",
    "report",
    "reverse",
    "serialize_digraph",
    "seymour_vertices_arc",
    "seymour_vertices_unweighted",
    "seymour_vertices_vw",
    "verify_certificate",
]
