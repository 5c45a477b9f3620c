"""Triangle-mesh solids: primitives, booleans, volumes, point membership."""

from .csg import boolean_difference, boolean_intersection, boolean_union, csg_boolean
from .errors import (
    CsgFailure,
    GeometryError,
    NonPositiveDimension,
    NotABox,
    NotWatertight,
    ResourceLimit,
)
from .mesh import Aabb, TriangleMesh, is_watertight, mesh_volume, signed_volume
from .membership import BoolNode, BoxLeaf, HyparLeaf, Membership, SphereLeaf, contains
from .primitives import (
    BOX_EDGES,
    DEFAULT_QUALITY,
    TessellationQuality,
    box_edges,
    edge_point,
    make_box,
    make_building_grid,
    make_hypar,
    make_sphere,
    random_edge_point,
)
from .solid import Solid
from .voxel import voxel_volume

__all__ = [
    "Aabb",
    "BOX_EDGES",
    "BoolNode",
    "BoxLeaf",
    "CsgFailure",
    "DEFAULT_QUALITY",
    "GeometryError",
    "HyparLeaf",
    "Membership",
    "NonPositiveDimension",
    "NotABox",
    "NotWatertight",
    "ResourceLimit",
    "Solid",
    "SphereLeaf",
    "TessellationQuality",
    "TriangleMesh",
    "boolean_difference",
    "boolean_intersection",
    "boolean_union",
    "box_edges",
    "contains",
    "csg_boolean",
    "edge_point",
    "is_watertight",
    "make_box",
    "make_building_grid",
    "make_hypar",
    "make_sphere",
    "mesh_volume",
    "random_edge_point",
    "signed_volume",
    "voxel_volume",
]
