"""Primitive solid constructors.

All dimensions are meters.  Every constructor returns a :class:`Solid` whose
mesh is watertight by construction and whose membership tree describes the
same point set exactly (up to tessellation for curved surfaces).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveDimension, NotABox, ResourceLimit
from .membership import BoxLeaf, HyparLeaf, SphereLeaf
from .mesh import TriangleMesh
from .solid import Solid

GRID_CELL_LIMIT = 10_000


@dataclass(frozen=True)
class TessellationQuality:
    """Mesh density knobs. Sphere volume error shrinks ~quadratically in
    ``sphere_segments``; 64 keeps it under 0.5%."""

    sphere_segments: int = 64
    hypar_divisions: int = 32

    def __post_init__(self):
        if self.sphere_segments < 8:
            raise NonPositiveDimension("sphere_segments must be >= 8")
        if self.hypar_divisions < 4:
            raise NonPositiveDimension("hypar_divisions must be >= 4")


DEFAULT_QUALITY = TessellationQuality()

# 12 box triangles over the vertex order:
#   0..3 bottom ring CCW from (-x,-y), 4..7 the same ring at the top.
_BOX_TRIANGLES = np.array(
    [
        (0, 2, 1), (0, 3, 2),  # bottom, -z
        (4, 5, 6), (4, 6, 7),  # top, +z
        (0, 1, 5), (0, 5, 4),  # -y
        (1, 2, 6), (1, 6, 5),  # +x
        (2, 3, 7), (2, 7, 6),  # +y
        (3, 0, 4), (3, 4, 7),  # -x
    ],
    dtype=np.int32,
)

# Edge index -> (vertex, vertex) over the same vertex order.  Documented
# enumeration: 4 bottom edges counterclockwise from the (-x,-y) corner,
# then 4 verticals (same corner order), then 4 top edges.
BOX_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 0),
    (0, 4), (1, 5), (2, 6), (3, 7),
    (4, 5), (5, 6), (6, 7), (7, 4),
)


def _box_vertices(lo, hi) -> np.ndarray:
    x0, y0, z0 = lo
    x1, y1, z1 = hi
    return np.array(
        [
            (x0, y0, z0), (x1, y0, z0), (x1, y1, z0), (x0, y1, z0),
            (x0, y0, z1), (x1, y0, z1), (x1, y1, z1), (x0, y1, z1),
        ]
    )


def make_box(extents, origin=(0.0, 0.0, 0.0)) -> Solid:
    """Axis-aligned box with ``origin`` at its minimum corner."""
    w, d, h = (float(v) for v in extents)
    if w <= 0.0 or d <= 0.0 or h <= 0.0:
        raise NonPositiveDimension(f"box extents must be > 0, got {(w, d, h)}")
    lo = tuple(float(v) for v in origin)
    hi = (lo[0] + w, lo[1] + d, lo[2] + h)
    mesh = TriangleMesh(_box_vertices(lo, hi), _BOX_TRIANGLES)
    return Solid(mesh, BoxLeaf(lo, hi), "box")


def make_sphere(
    radius: float,
    center=(0.0, 0.0, 0.0),
    quality: TessellationQuality = DEFAULT_QUALITY,
) -> Solid:
    """UV sphere: ``sphere_segments`` around the equator, half as many stacks.

    All vertices lie on the sphere, so the mesh volume is a strict lower
    bound on (4/3)πr³ and converges to it as segments grow.
    """
    radius = float(radius)
    if radius <= 0.0:
        raise NonPositiveDimension(f"sphere radius must be > 0, got {radius}")
    center = np.asarray(center, dtype=np.float64)
    seg = quality.sphere_segments
    rings = max(2, seg // 2)

    verts = [center + (0.0, 0.0, radius)]
    for i in range(1, rings):
        theta = np.pi * i / rings
        phi = 2.0 * np.pi * np.arange(seg) / seg
        ring = np.stack(
            [
                radius * np.sin(theta) * np.cos(phi),
                radius * np.sin(theta) * np.sin(phi),
                np.full(seg, radius * np.cos(theta)),
            ],
            axis=1,
        )
        verts.append(center + ring)
    verts.append(center + (0.0, 0.0, -radius))
    vertices = np.vstack([np.atleast_2d(v) for v in verts])

    def ring_index(i: int, j: int) -> int:
        return 1 + (i - 1) * seg + (j % seg)

    tris: list[tuple[int, int, int]] = []
    top, bottom = 0, len(vertices) - 1
    for j in range(seg):
        tris.append((top, ring_index(1, j), ring_index(1, j + 1)))
    for i in range(1, rings - 1):
        for j in range(seg):
            a = ring_index(i, j)
            b = ring_index(i, j + 1)
            c = ring_index(i + 1, j + 1)
            d = ring_index(i + 1, j)
            tris.append((a, d, c))
            tris.append((a, c, b))
    for j in range(seg):
        tris.append((bottom, ring_index(rings - 1, j + 1), ring_index(rings - 1, j)))

    mesh = TriangleMesh(vertices, np.array(tris, dtype=np.int32))
    return Solid(mesh, SphereLeaf(tuple(center), radius), "sphere")


def make_hypar(
    plan_w: float,
    plan_d: float,
    corner_heights,
    thickness: float,
    quality: TessellationQuality = DEFAULT_QUALITY,
) -> Solid:
    """Bilinear (ruled) patch over the plan rectangle, thickened along z.

    ``corner_heights`` = (h00, h10, h01, h11) at plan corners (0,0), (w,0),
    (0,d), (w,d), giving the shell's mid-surface; the two sheets sit at
    ±thickness/2 around it.  Non-coplanar corners give the saddle shape;
    equal corners degenerate to a flat slab.  The patch sits at the
    coordinate origin; position it with a move.
    """
    w, d, t = float(plan_w), float(plan_d), float(thickness)
    if w <= 0.0 or d <= 0.0:
        raise NonPositiveDimension(f"hypar plan must be > 0, got {(w, d)}")
    if t <= 0.0:
        raise NonPositiveDimension(f"hypar thickness must be > 0, got {t}")
    h00, h10, h01, h11 = (float(h) for h in corner_heights)
    n = quality.hypar_divisions

    u = np.linspace(0.0, 1.0, n + 1)
    uu, vv = np.meshgrid(u, u, indexing="ij")
    zz = (1 - uu) * (1 - vv) * h00 + uu * (1 - vv) * h10 + (1 - uu) * vv * h01 + uu * vv * h11
    xx, yy = uu * w, vv * d

    lower = np.stack([xx, yy, zz - t / 2.0], axis=-1).reshape(-1, 3)
    upper = lower + (0.0, 0.0, t)
    vertices = np.vstack([lower, upper])
    base = (n + 1) * (n + 1)

    def b(i: int, j: int) -> int:
        return i * (n + 1) + j

    def tp(i: int, j: int) -> int:
        return base + i * (n + 1) + j

    tris: list[tuple[int, int, int]] = []
    for i in range(n):
        for j in range(n):
            tris.append((tp(i, j), tp(i + 1, j), tp(i + 1, j + 1)))
            tris.append((tp(i, j), tp(i + 1, j + 1), tp(i, j + 1)))
            tris.append((b(i, j), b(i + 1, j + 1), b(i + 1, j)))
            tris.append((b(i, j), b(i, j + 1), b(i + 1, j + 1)))
    for i in range(n):
        tris.append((b(i, 0), b(i + 1, 0), tp(i + 1, 0)))
        tris.append((b(i, 0), tp(i + 1, 0), tp(i, 0)))
        tris.append((b(i + 1, n), b(i, n), tp(i, n)))
        tris.append((b(i + 1, n), tp(i, n), tp(i + 1, n)))
    for j in range(n):
        tris.append((b(0, j), tp(0, j + 1), b(0, j + 1)))
        tris.append((b(0, j), tp(0, j), tp(0, j + 1)))
        tris.append((b(n, j), b(n, j + 1), tp(n, j + 1)))
        tris.append((b(n, j), tp(n, j + 1), tp(n, j)))

    mesh = TriangleMesh(vertices, np.array(tris, dtype=np.int32))
    leaf = HyparLeaf(0.0, 0.0, w, d, (h00, h10, h01, h11), t)
    return Solid(mesh, leaf, "hypar")


def make_building_grid(
    rows: int,
    cols: int,
    footprint_w: float,
    footprint_d: float,
    height: float,
    spacing: float,
    spacing_mode: str = "gap",
) -> list[Solid]:
    """Rows x cols of identical boxes on the ground plane.

    ``spacing_mode="gap"`` reads spacing as clear distance between facades
    (pitch = footprint + spacing); ``"pitch"`` reads it as center-to-center
    distance directly.
    """
    if rows < 1 or cols < 1:
        raise NonPositiveDimension("grid rows/cols must be >= 1")
    if rows * cols > GRID_CELL_LIMIT:
        raise ResourceLimit(f"grid cells {rows * cols:,} > {GRID_CELL_LIMIT:,}")
    if spacing < 0.0:
        raise NonPositiveDimension("grid spacing must be >= 0")
    if spacing_mode not in ("gap", "pitch"):
        raise ValueError(f"spacing_mode must be 'gap' or 'pitch', got {spacing_mode!r}")
    if spacing_mode == "gap":
        pitch_x = footprint_w + spacing
        pitch_y = footprint_d + spacing
    else:
        pitch_x = spacing
        pitch_y = spacing

    out = []
    for r in range(rows):
        for c in range(cols):
            origin = (c * pitch_x, r * pitch_y, 0.0)
            out.append(make_box((footprint_w, footprint_d, height), origin))
    return out


def box_edges(box: Solid) -> np.ndarray:
    """Endpoint coordinates of the 12 edges, shape (12, 2, 3)."""
    leaf = box.membership
    if not isinstance(leaf, BoxLeaf):
        raise NotABox(f"solid of kind {box.kind!r} has no box edge enumeration")
    verts = _box_vertices(leaf.lo, leaf.hi)
    return verts[np.array(BOX_EDGES)]


def edge_point(box: Solid, edge_index: int, t: float) -> np.ndarray:
    """Point at parameter ``t`` in [0, 1] along edge ``edge_index`` in 0..11."""
    if not 0 <= edge_index < 12:
        raise ValueError(f"edge_index must be in 0..11, got {edge_index}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"edge parameter must be in [0, 1], got {t}")
    a, b = box_edges(box)[edge_index]
    return a + t * (b - a)


def random_edge_point(
    box: Solid,
    rng: random.Random | None = None,
    *,
    seed: int | None = None,
    edge_index: int | None = None,
    t: float | None = None,
) -> tuple[np.ndarray, int, float]:
    """Point on a box edge; unspecified edge/parameter drawn from ``rng``.

    Draw order is fixed (edge first, then t) so a given generator state
    always yields the same point.  Returns (point, edge_index, t).
    """
    if rng is None:
        rng = random.Random(seed)
    if edge_index is None:
        edge_index = rng.randrange(12)
    if t is None:
        t = rng.random()
    return edge_point(box, edge_index, t), edge_index, t
