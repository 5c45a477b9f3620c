"""Boolean operations on solids, with mesh cleanup.

The backend returns a raw triangle soup (split fragments, duplicated
vertices).  The pipeline here turns that into a validated mesh:

1. weld vertices closer than 1e-9 m,
2. drop triangles that collapsed or have area below 1e-12 m^2,
3. repair T junctions (welded vertices sitting on another triangle's
   edge get spliced into that edge; affected triangles are re-fanned
   around their centroid),
4. verify the result is closed and consistently oriented.

Step 4 failing raises CsgFailure rather than returning broken geometry.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from . import backend
from .errors import CsgFailure
from .membership import BoolNode
from .mesh import DEGENERATE_AREA, WELD_EPS, TriangleMesh, watertight_errors, weld_vertices
from .solid import Solid

_OPS = ("union", "intersection", "difference")


def boolean_union(a: Solid, b: Solid) -> Solid:
    return csg_boolean("union", a, b)


def boolean_intersection(a: Solid, b: Solid) -> Solid:
    return csg_boolean("intersection", a, b)


def boolean_difference(a: Solid, b: Solid) -> Solid:
    return csg_boolean("difference", a, b)


def csg_boolean(op: str, a: Solid, b: Solid) -> Solid:
    """Boolean of two solids.  The result's membership tree is exact; its
    mesh carries whatever tessellation error the operands had."""
    if op not in _OPS:
        raise ValueError(f"op must be one of {_OPS}, got {op!r}")
    membership = BoolNode(op, a.membership, b.membership)

    mesh = _boolean_mesh(op, a.mesh, b.mesh)
    return Solid(mesh, membership, "csg")


def _boolean_mesh(op: str, ma: TriangleMesh, mb: TriangleMesh) -> TriangleMesh:
    # meshes are immutable, so reusing an operand's mesh object is safe
    if ma.is_empty:
        return mb if op == "union" else TriangleMesh.empty()
    if mb.is_empty:
        return TriangleMesh.empty() if op == "intersection" else ma

    # Disjoint operands never need clipping.  Touching ones (inflated
    # bounds overlap) do, so coplanar contact faces get merged properly.
    if not ma.aabb().inflated(WELD_EPS).overlaps(mb.aabb()):
        if op == "union":
            return _concat(ma, mb)
        if op == "intersection":
            return TriangleMesh.empty()
        return ma

    soup_v, soup_t = backend.bsp_boolean(op, ma.vertices, ma.triangles, mb.vertices, mb.triangles)
    return _cleanup_soup(soup_v, soup_t, op)


def _concat(ma: TriangleMesh, mb: TriangleMesh) -> TriangleMesh:
    vertices = np.vstack([ma.vertices, mb.vertices])
    triangles = np.vstack([ma.triangles, mb.triangles + len(ma.vertices)])
    return TriangleMesh(vertices, triangles)


# fallback weld for fragments split along nearly-tangent planes, which can
# leave matching vertices microns apart; far below every volume tolerance
RESCUE_WELD_EPS = 1e-6


def _cleanup_soup(soup_v: np.ndarray, soup_t: np.ndarray, op: str) -> TriangleMesh:
    if len(soup_t) == 0:
        return TriangleMesh.empty()

    mesh, problems = _close_soup(soup_v, soup_t, WELD_EPS)
    if problems:
        mesh, problems = _close_soup(soup_v, soup_t, RESCUE_WELD_EPS)
    if problems:
        raise CsgFailure(
            f"{op} produced a non-watertight mesh after cleanup: " + "; ".join(problems[:5])
        )
    return mesh


def _close_soup(
    soup_v: np.ndarray, soup_t: np.ndarray, eps: float
) -> tuple[TriangleMesh, list[str]]:
    vertices, index_map = weld_vertices(soup_v, eps)
    triangles = index_map[soup_t]
    triangles = _drop_degenerate(vertices, triangles)
    if len(triangles) == 0:
        return TriangleMesh.empty(), []

    vertices, triangles = _repair_t_junctions(vertices, triangles, eps)
    triangles = _drop_degenerate(vertices, triangles)
    vertices, triangles = _compact(vertices, triangles)

    mesh = TriangleMesh(vertices, triangles)
    return mesh, watertight_errors(mesh)


def _drop_degenerate(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    if len(triangles) == 0:
        return triangles
    t = triangles
    keep = (t[:, 0] != t[:, 1]) & (t[:, 1] != t[:, 2]) & (t[:, 2] != t[:, 0])
    t = t[keep]
    if len(t) == 0:
        return t
    p = vertices[t]
    cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    areas = 0.5 * np.linalg.norm(cross, axis=1)
    return t[areas > DEGENERATE_AREA]


def _repair_t_junctions(
    vertices: np.ndarray, triangles: np.ndarray, eps: float = WELD_EPS
) -> tuple[np.ndarray, np.ndarray]:
    """Splice vertices lying on foreign triangle edges into those edges.

    After welding, a fragment corner can sit exactly on the interior of a
    neighbor's edge; that leaves the directed-edge pairing broken.  Every
    such vertex (within ``eps`` of the edge, excluding the endpoints) is
    inserted on the edge; triangles that gained points are re-triangulated
    as a fan around their centroid, which never touches the edges of
    untouched neighbors.
    """
    tri_edges = np.stack(
        [triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]], axis=1
    )  # (m, 3, 2)
    flat = tri_edges.reshape(-1, 2)
    p0 = vertices[flat[:, 0]]
    p1 = vertices[flat[:, 1]]
    mid = (p0 + p1) * 0.5
    half = 0.5 * np.linalg.norm(p1 - p0, axis=1)

    tree = cKDTree(vertices)
    candidates = tree.query_ball_point(mid, half + eps)

    seg = p1 - p0
    seg_len2 = np.einsum("ij,ij->i", seg, seg)
    insertions: dict[int, list[tuple[float, int]]] = {}
    for e, cand in enumerate(candidates):
        if len(cand) <= 2:
            continue
        i, j = flat[e]
        if seg_len2[e] == 0.0:
            continue
        for k in cand:
            if k == i or k == j:
                continue
            d = vertices[k] - p0[e]
            t = float(np.dot(d, seg[e]) / seg_len2[e])
            if t <= 0.0 or t >= 1.0:
                continue
            off = d - t * seg[e]
            if float(np.dot(off, off)) <= eps * eps:
                insertions.setdefault(e, []).append((t, int(k)))

    if not insertions:
        return vertices, triangles

    new_vertices = [vertices]
    next_index = len(vertices)
    out_tris: list[np.ndarray | list[tuple[int, int, int]]] = []
    touched = np.zeros(len(triangles), dtype=bool)
    for e in insertions:
        touched[e // 3] = True
    out_tris.append(triangles[~touched])

    fan_tris: list[tuple[int, int, int]] = []
    centroids = []
    for ti in np.nonzero(touched)[0]:
        loop: list[int] = []
        for side in range(3):
            e = int(ti) * 3 + side
            i, j = flat[e]
            loop.append(int(i))
            for t, k in sorted(insertions.get(e, [])):
                loop.append(k)
        c_index = next_index
        next_index += 1
        centroids.append(vertices[triangles[ti]].mean(axis=0))
        n = len(loop)
        for s in range(n):
            fan_tris.append((c_index, loop[s], loop[(s + 1) % n]))

    if centroids:
        new_vertices.append(np.array(centroids))
    out_tris.append(fan_tris)

    vertices = np.vstack(new_vertices)
    triangles = np.vstack(
        [np.asarray(part, dtype=np.int32).reshape(-1, 3) for part in out_tris]
    )
    return vertices, triangles


def _compact(vertices: np.ndarray, triangles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    used = np.unique(triangles)
    remap = np.zeros(len(vertices), dtype=np.int32)
    remap[used] = np.arange(len(used), dtype=np.int32)
    return vertices[used], remap[triangles]
