"""Triangle meshes: storage, integrity checks and signed volume.

All meshes are closed, consistently oriented triangle surfaces with outward
(counterclockwise) winding and coordinates in meters.  Volume comes from the
divergence theorem: each triangle contributes det(v0, v1, v2) / 6, which is
exact for closed polyhedra regardless of convexity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotWatertight

# Triangles with area at or below this are considered degenerate.
DEGENERATE_AREA = 1e-12

# Vertex weld radius used throughout the kernel.
WELD_EPS = 1e-9


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned bounding box; ``lo <= hi`` componentwise."""

    lo: tuple[float, float, float]
    hi: tuple[float, float, float]

    def union(self, other: "Aabb") -> "Aabb":
        return Aabb(
            tuple(min(a, b) for a, b in zip(self.lo, other.lo)),
            tuple(max(a, b) for a, b in zip(self.hi, other.hi)),
        )

    def intersection(self, other: "Aabb") -> "Aabb":
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        return Aabb(lo, hi)

    @property
    def is_empty(self) -> bool:
        return any(l > h for l, h in zip(self.lo, self.hi))

    @property
    def size(self) -> tuple[float, float, float]:
        return tuple(max(h - l, 0.0) for l, h in zip(self.lo, self.hi))

    def inflated(self, margin: float) -> "Aabb":
        return Aabb(
            tuple(l - margin for l in self.lo),
            tuple(h + margin for h in self.hi),
        )

    def overlaps(self, other: "Aabb") -> bool:
        return not self.intersection(other).is_empty


class TriangleMesh:
    """Immutable vertex/index triangle mesh.

    ``vertices``: (n, 3) float64, ``triangles``: (m, 3) int32 with CCW
    outward winding.  Construction does not validate closure; call
    :func:`check_watertight` or :func:`mesh_volume` for that.
    """

    __slots__ = ("vertices", "triangles")

    def __init__(self, vertices: np.ndarray, triangles: np.ndarray):
        vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
        triangles = np.asarray(triangles, dtype=np.int32).reshape(-1, 3)
        vertices.setflags(write=False)
        triangles.setflags(write=False)
        self.vertices = vertices
        self.triangles = triangles

    @classmethod
    def empty(cls) -> "TriangleMesh":
        return cls(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int32))

    @property
    def triangle_count(self) -> int:
        return int(self.triangles.shape[0])

    @property
    def is_empty(self) -> bool:
        return self.triangles.shape[0] == 0

    def corners(self) -> np.ndarray:
        """Per-triangle vertex positions, shape (m, 3, 3)."""
        return self.vertices[self.triangles]

    def aabb(self) -> Aabb:
        if self.is_empty:
            return Aabb((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        used = self.vertices[np.unique(self.triangles)]
        return Aabb(tuple(used.min(axis=0)), tuple(used.max(axis=0)))

    def translated(self, delta) -> "TriangleMesh":
        return TriangleMesh(self.vertices + np.asarray(delta, dtype=np.float64), self.triangles)

    def triangle_areas(self) -> np.ndarray:
        c = self.corners()
        cross = np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])
        return 0.5 * np.linalg.norm(cross, axis=1)

    def triangle_normals(self) -> np.ndarray:
        """Unit outward normals; degenerate triangles get a zero vector."""
        c = self.corners()
        cross = np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])
        norm = np.linalg.norm(cross, axis=1)
        safe = np.where(norm > 0.0, norm, 1.0)
        out = cross / safe[:, None]
        out[norm == 0.0] = 0.0
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriangleMesh):
            return NotImplemented
        return (
            self.vertices.shape == other.vertices.shape
            and self.triangles.shape == other.triangles.shape
            and np.array_equal(self.vertices, other.vertices)
            and np.array_equal(self.triangles, other.triangles)
        )

    def __hash__(self):
        return hash((self.vertices.tobytes(), self.triangles.tobytes()))

    def __repr__(self) -> str:
        return f"TriangleMesh({len(self.vertices)} verts, {self.triangle_count} tris)"


def signed_volume(mesh: TriangleMesh) -> float:
    """Divergence-theorem volume; positive for outward-wound closed meshes.

    No closure check — use :func:`mesh_volume` when the input is untrusted.
    """
    if mesh.is_empty:
        return 0.0
    c = mesh.corners()
    return float(np.einsum("ij,ij->i", c[:, 0], np.cross(c[:, 1], c[:, 2])).sum() / 6.0)


def watertight_errors(mesh: TriangleMesh) -> list[str]:
    """Why this mesh is not a closed oriented manifold; empty when it is.

    A closed, consistently oriented surface has every directed edge exactly
    once and its reverse exactly once.  Degenerate (collapsed or near-zero
    area) triangles are reported separately.
    """
    problems: list[str] = []
    if mesh.is_empty:
        return problems

    t = mesh.triangles
    collapsed = (t[:, 0] == t[:, 1]) | (t[:, 1] == t[:, 2]) | (t[:, 2] == t[:, 0])
    if collapsed.any():
        problems.append(f"{int(collapsed.sum())} collapsed triangles (repeated vertex index)")

    tiny = mesh.triangle_areas() <= DEGENERATE_AREA
    if tiny.any():
        problems.append(f"{int(tiny.sum())} degenerate triangles (area <= {DEGENERATE_AREA})")

    edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    directed = edges[:, 0].astype(np.int64) * len(mesh.vertices) + edges[:, 1]
    uniq, counts = np.unique(directed, return_counts=True)
    if (counts > 1).any():
        problems.append(f"{int((counts > 1).sum())} directed edges used more than once")
    else:
        reverse = edges[:, 1].astype(np.int64) * len(mesh.vertices) + edges[:, 0]
        unmatched = np.setdiff1d(directed, reverse, assume_unique=False)
        if unmatched.size:
            problems.append(
                f"{unmatched.size} boundary edges (no opposite-direction partner)"
            )
    return problems


def is_watertight(mesh: TriangleMesh) -> bool:
    return not watertight_errors(mesh)


def mesh_volume(mesh: TriangleMesh) -> float:
    """Volume in m³ of a watertight, outward-oriented mesh.

    Raises :class:`NotWatertight` when the edge-pairing / orientation check
    fails, so a silently wrong signed sum can never escape.
    """
    problems = watertight_errors(mesh)
    if problems:
        raise NotWatertight("; ".join(problems))
    return signed_volume(mesh)


def weld_vertices(vertices: np.ndarray, eps: float = WELD_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Merge vertices closer than ``eps``.

    Returns ``(unique_vertices, index_map)`` where ``index_map[i]`` is the new
    index of input vertex ``i``.  Clusters are connected components of the
    "within eps" relation; the lowest original index represents its component,
    so the result is deterministic.  Surviving representatives from different
    components are pairwise farther than ``eps`` apart, which the CSG cleanup
    relies on.
    """
    from scipy.spatial import cKDTree

    vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
    n = len(vertices)
    if n == 0:
        return vertices, np.zeros(0, dtype=np.int64)

    parent = np.arange(n, dtype=np.int64)

    def find(i: int) -> int:
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    tree = cKDTree(vertices)
    for a, b in tree.query_pairs(eps, output_type="ndarray"):
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            # keep the smaller index as the root for determinism
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    roots = np.array([find(i) for i in range(n)], dtype=np.int64)
    unique_roots, index_map = np.unique(roots, return_inverse=True)
    return vertices[unique_roots], index_map
