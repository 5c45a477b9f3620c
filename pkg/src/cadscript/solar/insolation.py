"""Shadow casting and per-cell sunlit-hours over one date.

Purely geometric: a ground cell is sunlit at an instant when the sun is up
and the ray from the cell center toward the sun hits no scene triangle.
No radiometry, no atmosphere.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry import Solid, TriangleMesh
from ..geometry.backend import make_ray_tracer
from ..geometry.errors import ResourceLimit
from ..geometry.membership import contains
from .position import GeoLocation, SolarAngles, SunPath, sun_direction, sun_path

RAY_LIFT = 1e-3  # ray origins sit 1 mm above the grid plane
CELL_SAMPLE_LIMIT = 50_000_000

# fallback grid for scenes with nothing in them: 10 x 10 m around the origin
_EMPTY_SCENE_HALF = 5.0


@dataclass(frozen=True)
class GroundGrid:
    """Square-cell grid on the z=0 plane.  Cell (ix, iy) spans
    [x0 + ix*s, x0 + (ix+1)*s) x [y0 + iy*s, ...); arrays over the grid are
    indexed [iy, ix]."""

    origin: tuple[float, float]
    cell_size: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.cell_size <= 0.0:
            raise ValueError(f"cell size must be > 0, got {self.cell_size}")
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"grid must have at least one cell, got {self.nx}x{self.ny}")

    @property
    def cell_count(self) -> int:
        return self.nx * self.ny

    def cell_centers(self) -> np.ndarray:
        """(ny*nx, 2) cell-center coordinates, row-major in [iy, ix]."""
        x0, y0 = self.origin
        xs = x0 + (np.arange(self.nx) + 0.5) * self.cell_size
        ys = y0 + (np.arange(self.ny) + 0.5) * self.cell_size
        gx, gy = np.meshgrid(xs, ys)
        return np.stack([gx.ravel(), gy.ravel()], axis=1)

    @classmethod
    def for_scene(cls, solids: Sequence[Solid], cell_size: float = 1.0) -> "GroundGrid":
        """Grid covering the scene footprint, inflated on each side by twice
        the tallest object so solstice-morning shadows stay on the grid."""
        boxes = [s.aabb() for s in solids if not s.mesh.is_empty]
        if not boxes:
            half = _EMPTY_SCENE_HALF
            n = max(1, int(np.ceil(2 * half / cell_size)))
            return cls((-half, -half), cell_size, n, n)
        lo = np.min([b.lo for b in boxes], axis=0)
        hi = np.max([b.hi for b in boxes], axis=0)
        tallest = max(hi[2] - 0.0, 0.0)
        margin = 2.0 * tallest
        x0, y0 = lo[0] - margin, lo[1] - margin
        x1, y1 = hi[0] + margin, hi[1] + margin
        nx = max(1, int(np.ceil((x1 - x0) / cell_size)))
        ny = max(1, int(np.ceil((y1 - y0) / cell_size)))
        return cls((float(x0), float(y0)), cell_size, nx, ny)


@dataclass(frozen=True)
class InsolationGrid:
    """Per-cell sunlit hours for one date.  Occupied cells (center inside a
    solid at ground level) are zeroed and flagged."""

    grid: GroundGrid
    location: GeoLocation
    date: dt.date
    interval_min: int
    daylight_hours: float
    sunlit_hours: np.ndarray  # (ny, nx) float64
    occupied: np.ndarray  # (ny, nx) bool

    def unoccupied_stats(self) -> dict[str, float]:
        values = self.sunlit_hours[~self.occupied]
        if values.size == 0:
            return {"min": 0.0, "max": 0.0, "mean": 0.0}
        return {
            "min": float(values.min()),
            "max": float(values.max()),
            "mean": float(values.mean()),
        }


def _scene_mesh(meshes: Sequence[TriangleMesh]) -> TriangleMesh:
    parts = [m for m in meshes if not m.is_empty]
    if not parts:
        return TriangleMesh.empty()
    if len(parts) == 1:
        return parts[0]
    vertices = np.vstack([m.vertices for m in parts])
    offsets = np.cumsum([0] + [len(m.vertices) for m in parts[:-1]])
    triangles = np.vstack([m.triangles + o for m, o in zip(parts, offsets)])
    return TriangleMesh(vertices, triangles)


def shadow_mask(
    meshes: Sequence[TriangleMesh], sun: SolarAngles, grid: GroundGrid
) -> np.ndarray:
    """(ny, nx) bool: True where the cell center sees the sun.  All False
    when the sun is at or below the horizon."""
    if sun.altitude_deg <= 0.0:
        return np.zeros((grid.ny, grid.nx), dtype=bool)
    scene = _scene_mesh(meshes)
    tracer = make_ray_tracer(scene.vertices, scene.triangles)
    centers = grid.cell_centers()
    origins = np.column_stack([centers, np.full(len(centers), RAY_LIFT)])
    hit = tracer(origins, sun_direction(sun))
    return (~hit).reshape(grid.ny, grid.nx)


def insolation_study(
    solids: Sequence[Solid],
    loc: GeoLocation,
    date: dt.date,
    interval_min: int = 10,
    grid: GroundGrid | None = None,
    cell_size: float = 1.0,
) -> InsolationGrid:
    """Sunlit hours per ground cell over one date.

    Evaluates every sun-path sample sequentially against one combined scene
    mesh, so results are deterministic for identical inputs.
    """
    if grid is None:
        grid = GroundGrid.for_scene(solids, cell_size)
    path = sun_path(loc, date, interval_min)

    n_samples = len(path.samples)
    if grid.cell_count * n_samples > CELL_SAMPLE_LIMIT:
        raise ResourceLimit(
            f"{grid.cell_count:,} cells x {n_samples:,} samples exceeds "
            f"{CELL_SAMPLE_LIMIT:,}; coarsen the grid or the interval"
        )

    scene = _scene_mesh([s.mesh for s in solids])
    tracer = make_ray_tracer(scene.vertices, scene.triangles)
    centers = grid.cell_centers()
    origins = np.column_stack([centers, np.full(len(centers), RAY_LIFT)])

    counts = np.zeros(len(centers), dtype=np.int64)
    for sample in path.samples:
        if sample.angles.altitude_deg <= 0.0:
            continue
        hit = tracer(origins, sun_direction(sample.angles))
        counts += ~hit

    # multiply before dividing, same as SunPath.daylight_hours, so an
    # unshaded cell compares exactly equal to the daylight duration
    hours = (counts * interval_min / 60.0).reshape(grid.ny, grid.nx)

    occupied = np.zeros(len(centers), dtype=bool)
    probe = np.column_stack([centers, np.full(len(centers), RAY_LIFT)])
    for s in solids:
        occupied |= contains(s.membership, probe)
    occupied = occupied.reshape(grid.ny, grid.nx)
    hours[occupied] = 0.0

    return InsolationGrid(
        grid=grid,
        location=loc,
        date=date,
        interval_min=interval_min,
        daylight_hours=path.daylight_hours,
        sunlit_hours=hours,
        occupied=occupied,
    )
