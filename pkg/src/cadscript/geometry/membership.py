"""Analytic membership trees: the mesh-independent description of a solid.

Every solid carries one of these next to its triangle mesh.  Leaves are exact
primitive inequalities, internal nodes are boolean combinators, so point
classification never touches the tessellation — which is what makes the tree
usable as an independent oracle for the mesh CSG.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import Aabb


@dataclass(frozen=True)
class BoxLeaf:
    lo: tuple[float, float, float]
    hi: tuple[float, float, float]


@dataclass(frozen=True)
class SphereLeaf:
    center: tuple[float, float, float]
    radius: float


@dataclass(frozen=True)
class HyparLeaf:
    """Bilinear patch over a rectangle, thickened symmetrically along z.

    ``corners`` are the mid-surface heights (h00, h10, h01, h11) at plan
    corners (x0, y0), (x0+w, y0), (x0, y0+d), (x0+w, y0+d); the shell
    spans ±thickness/2 around that surface.
    """

    x0: float
    y0: float
    w: float
    d: float
    corners: tuple[float, float, float, float]
    thickness: float


@dataclass(frozen=True)
class BoolNode:
    op: str  # "union" | "intersection" | "difference"
    a: "Membership"
    b: "Membership"


Membership = BoxLeaf | SphereLeaf | HyparLeaf | BoolNode


def hypar_surface_z(leaf: HyparLeaf, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Height of the bilinear mid-surface at plan coordinates."""
    u = (np.asarray(x, dtype=np.float64) - leaf.x0) / leaf.w
    v = (np.asarray(y, dtype=np.float64) - leaf.y0) / leaf.d
    h00, h10, h01, h11 = leaf.corners
    return (
        (1.0 - u) * (1.0 - v) * h00
        + u * (1.0 - v) * h10
        + (1.0 - u) * v * h01
        + u * v * h11
    )


def contains(tree: Membership, points: np.ndarray) -> np.ndarray:
    """Vectorized point classification. ``points``: (k, 3) -> bool (k,).

    Boundaries are inclusive; the distinction is measure-zero and irrelevant
    to the voxel counting this feeds.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    x, y, z = points[:, 0], points[:, 1], points[:, 2]

    if isinstance(tree, BoxLeaf):
        lo, hi = tree.lo, tree.hi
        return (
            (x >= lo[0]) & (x <= hi[0])
            & (y >= lo[1]) & (y <= hi[1])
            & (z >= lo[2]) & (z <= hi[2])
        )
    if isinstance(tree, SphereLeaf):
        c = np.asarray(tree.center)
        d = points - c
        return np.einsum("ij,ij->i", d, d) <= tree.radius * tree.radius
    if isinstance(tree, HyparLeaf):
        in_plan = (
            (x >= tree.x0) & (x <= tree.x0 + tree.w)
            & (y >= tree.y0) & (y <= tree.y0 + tree.d)
        )
        zs = hypar_surface_z(tree, x, y)
        half = tree.thickness / 2.0
        return in_plan & (z >= zs - half) & (z <= zs + half)
    if isinstance(tree, BoolNode):
        a = contains(tree.a, points)
        b = contains(tree.b, points)
        if tree.op == "union":
            return a | b
        if tree.op == "intersection":
            return a & b
        if tree.op == "difference":
            return a & ~b
        raise ValueError(f"unknown boolean op {tree.op!r}")
    raise TypeError(f"not a membership node: {tree!r}")


def contains_point(tree: Membership, point) -> bool:
    return bool(contains(tree, np.asarray(point, dtype=np.float64).reshape(1, 3))[0])


def tree_aabb(tree: Membership) -> Aabb:
    """Bounding box of the point set; exact for leaves, conservative for nodes."""
    if isinstance(tree, BoxLeaf):
        return Aabb(tree.lo, tree.hi)
    if isinstance(tree, SphereLeaf):
        c, r = tree.center, tree.radius
        return Aabb(tuple(ci - r for ci in c), tuple(ci + r for ci in c))
    if isinstance(tree, HyparLeaf):
        zlo = min(tree.corners)
        zhi = max(tree.corners) + tree.thickness
        return Aabb((tree.x0, tree.y0, zlo), (tree.x0 + tree.w, tree.y0 + tree.d, zhi))
    if isinstance(tree, BoolNode):
        a = tree_aabb(tree.a)
        b = tree_aabb(tree.b)
        if tree.op == "union":
            return a.union(b)
        if tree.op == "intersection":
            return a.intersection(b)
        return a  # difference: bounded by the left operand
    raise TypeError(f"not a membership node: {tree!r}")


def translated(tree: Membership, delta) -> Membership:
    dx, dy, dz = (float(v) for v in delta)
    if isinstance(tree, BoxLeaf):
        return BoxLeaf(
            (tree.lo[0] + dx, tree.lo[1] + dy, tree.lo[2] + dz),
            (tree.hi[0] + dx, tree.hi[1] + dy, tree.hi[2] + dz),
        )
    if isinstance(tree, SphereLeaf):
        c = tree.center
        return SphereLeaf((c[0] + dx, c[1] + dy, c[2] + dz), tree.radius)
    if isinstance(tree, HyparLeaf):
        return HyparLeaf(
            tree.x0 + dx,
            tree.y0 + dy,
            tree.w,
            tree.d,
            tuple(h + dz for h in tree.corners),
            tree.thickness,
        )
    if isinstance(tree, BoolNode):
        return BoolNode(tree.op, translated(tree.a, delta), translated(tree.b, delta))
    raise TypeError(f"not a membership node: {tree!r}")
