"""A solid is a triangle mesh paired with its analytic membership tree."""

from __future__ import annotations

from dataclasses import dataclass

from . import membership as mb
from .mesh import Aabb, TriangleMesh, signed_volume


@dataclass(frozen=True)
class Solid:
    mesh: TriangleMesh
    membership: mb.Membership
    kind: str  # box | sphere | hypar | csg

    def aabb(self) -> Aabb:
        """Mesh bounds when a mesh exists, else analytic bounds.

        Empty CSG results have no triangles but still carry a (conservative)
        membership box.
        """
        if self.mesh.is_empty:
            bb = mb.tree_aabb(self.membership)
            return bb if not bb.is_empty else Aabb((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        return self.mesh.aabb()

    def volume(self) -> float:
        return signed_volume(self.mesh)

    def translated(self, delta) -> "Solid":
        return Solid(
            self.mesh.translated(delta),
            mb.translated(self.membership, delta),
            self.kind,
        )

    def contains(self, points):
        return mb.contains(self.membership, points)
