"""Visibility-graph reconstruction of simple polygons by minimalistic agents."""

from .angle_recon import embed, fill_missing_angle, reconstruct_from_angles, reconstruct_unknown_n
from .geometry import Polygon, VisibilityGraph, build_visibility_graph, is_simple, measure, sees
from .labeled import LabeledDigraph, minimum_base

__all__ = [
    "LabeledDigraph",
    "Polygon",
    "VisibilityGraph",
    "build_visibility_graph",
    "embed",
    "fill_missing_angle",
    "is_simple",
    "measure",
    "minimum_base",
    "reconstruct_from_angles",
    "reconstruct_unknown_n",
    "sees",
]
