"""Exact rational polyhedral kernel."""

from .fme import MAX_FME_DIM, DimensionCapError
from .linalg import as_fraction, dot, vec
from .polyhedron import (
    GeneratorSystem,
    HalfspaceSystem,
    Polyhedron,
    Subspace,
    closed_conv_union,
    contains_set,
    hrep_to_vrep,
    in_recession_cone,
    intersect,
    intersect_all,
    linear_image,
    maximize,
    member,
    minkowski_sum,
    project,
    same_set,
    scale_set,
    support,
    translate,
    vrep_to_hrep,
)

__all__ = [
    "MAX_FME_DIM",
    "DimensionCapError",
    "GeneratorSystem",
    "HalfspaceSystem",
    "Polyhedron",
    "Subspace",
    "as_fraction",
    "closed_conv_union",
    "contains_set",
    "dot",
    "hrep_to_vrep",
    "in_recession_cone",
    "intersect",
    "intersect_all",
    "linear_image",
    "maximize",
    "member",
    "minkowski_sum",
    "project",
    "same_set",
    "scale_set",
    "support",
    "translate",
    "vec",
    "vrep_to_hrep",
]
