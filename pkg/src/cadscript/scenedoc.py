"""Versioned JSON scene document: the wire format for viewers.

Self-contained (meshes inlined, no external references) and lossless:
``deserialize(serialize(doc)) == doc`` exactly, because floats pass
through JSON in shortest-round-trip form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Tuple

from .session import Scene, Session
from .solar import InsolationGrid

DOCUMENT_VERSION = 1

Vec3 = Tuple[float, float, float]


@dataclass(frozen=True)
class ObjectDocument:
    id: str
    state: str
    vertices: Tuple[Vec3, ...]
    triangles: Tuple[Tuple[int, int, int], ...]
    aabb_lo: Vec3
    aabb_hi: Vec3


@dataclass(frozen=True)
class InsolationDocument:
    origin: Tuple[float, float]
    cell_size_m: float
    nx: int
    ny: int
    sunlit_hours: Tuple[Tuple[float, ...], ...]  # ny rows of nx values
    occupied: Tuple[Tuple[bool, ...], ...]
    daylight_hours: float
    interval_min: int
    date: str  # ISO
    latitude_deg: float
    longitude_deg: float


@dataclass(frozen=True)
class SceneDocument:
    version: int
    seed: int
    objects: Tuple[ObjectDocument, ...]
    insolation: Optional[InsolationDocument] = None


def _rows(array) -> Tuple[Tuple, ...]:
    return tuple(tuple(row) for row in array.tolist())


def _insolation_document(grid: InsolationGrid) -> InsolationDocument:
    return InsolationDocument(
        origin=tuple(grid.grid.origin),
        cell_size_m=grid.grid.cell_size,
        nx=grid.grid.nx,
        ny=grid.grid.ny,
        sunlit_hours=_rows(grid.sunlit_hours),
        occupied=_rows(grid.occupied),
        daylight_hours=grid.daylight_hours,
        interval_min=grid.interval_min,
        date=grid.date.isoformat(),
        latitude_deg=grid.location.latitude_deg,
        longitude_deg=grid.location.longitude_deg,
    )


def scene_document(session: Session) -> SceneDocument:
    """Snapshot the session's scene (and last sun study) as a document."""
    objects = []
    for obj in session.scene:
        mesh = obj.solid.mesh
        bb = obj.solid.aabb()
        objects.append(
            ObjectDocument(
                id=obj.id,
                state=obj.state,
                vertices=tuple(tuple(v) for v in mesh.vertices.tolist()),
                triangles=tuple(tuple(t) for t in mesh.triangles.tolist()),
                aabb_lo=tuple(bb.lo),
                aabb_hi=tuple(bb.hi),
            )
        )
    insolation = (
        _insolation_document(session.last_sun_study)
        if session.last_sun_study is not None
        else None
    )
    return SceneDocument(DOCUMENT_VERSION, session.seed, tuple(objects), insolation)


def _insolation_dict(g: InsolationDocument) -> dict:
    return {
        "origin": list(g.origin),
        "cell_size_m": g.cell_size_m,
        "nx": g.nx,
        "ny": g.ny,
        "sunlit_hours": [list(row) for row in g.sunlit_hours],
        "occupied": [list(row) for row in g.occupied],
        "daylight_hours": g.daylight_hours,
        "interval_min": g.interval_min,
        "date": g.date,
        "latitude_deg": g.latitude_deg,
        "longitude_deg": g.longitude_deg,
    }


def insolation_payload(grid: InsolationGrid) -> dict:
    """JSON-ready dict for one study, identical to the document form."""
    return _insolation_dict(_insolation_document(grid))


def serialize(doc: SceneDocument) -> str:
    payload = {
        "version": doc.version,
        "seed": doc.seed,
        "objects": [
            {
                "id": o.id,
                "state": o.state,
                "vertices": [list(v) for v in o.vertices],
                "triangles": [list(t) for t in o.triangles],
                "aabb": {"lo": list(o.aabb_lo), "hi": list(o.aabb_hi)},
            }
            for o in doc.objects
        ],
    }
    if doc.insolation is not None:
        payload["insolation"] = _insolation_dict(doc.insolation)
    return json.dumps(payload, separators=(",", ":"))


def deserialize(text: str) -> SceneDocument:
    payload = json.loads(text)
    version = payload["version"]
    if version != DOCUMENT_VERSION:
        raise ValueError(f"unsupported scene document version {version}")
    objects = tuple(
        ObjectDocument(
            id=o["id"],
            state=o["state"],
            vertices=tuple(tuple(v) for v in o["vertices"]),
            triangles=tuple(tuple(t) for t in o["triangles"]),
            aabb_lo=tuple(o["aabb"]["lo"]),
            aabb_hi=tuple(o["aabb"]["hi"]),
        )
        for o in payload["objects"]
    )
    insolation = None
    if "insolation" in payload:
        g = payload["insolation"]
        insolation = InsolationDocument(
            origin=tuple(g["origin"]),
            cell_size_m=g["cell_size_m"],
            nx=g["nx"],
            ny=g["ny"],
            sunlit_hours=tuple(tuple(row) for row in g["sunlit_hours"]),
            occupied=tuple(tuple(row) for row in g["occupied"]),
            daylight_hours=g["daylight_hours"],
            interval_min=g["interval_min"],
            date=g["date"],
            latitude_deg=g["latitude_deg"],
            longitude_deg=g["longitude_deg"],
        )
    return SceneDocument(version, payload["seed"], objects, insolation)
