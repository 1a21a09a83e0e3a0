"""Delaunay graph construction with exact predicates."""

from .delaunay import (
    BOUNDARY,
    DedupMap,
    Triangulation,
    adjacency,
    as_points_array,
    build_delaunay,
    dedupe_points,
    delaunay_graph,
)
from .graph import NeighborGraph, chain_graph, edge_list_text, graph_to_json
from .predicates import CirclePosition, Orientation, in_circumcircle, orient2d

__all__ = [
    "BOUNDARY",
    "CirclePosition",
    "DedupMap",
    "NeighborGraph",
    "Orientation",
    "Triangulation",
    "adjacency",
    "as_points_array",
    "build_delaunay",
    "chain_graph",
    "dedupe_points",
    "delaunay_graph",
    "edge_list_text",
    "graph_to_json",
    "in_circumcircle",
    "orient2d",
]
