"""Kernel backend selection.

Two interchangeable implementations of the hot paths (BSP booleans and
shadow-ray casting): a compiled extension and a pure-Python twin.  The
compiled one is picked when importable; set ``CADSCRIPT_BACKEND=pure`` or
``compiled`` to force a choice (forcing ``compiled`` raises if the
extension is not built).  Both produce bit-identical results, so the
choice only affects speed.
"""

from __future__ import annotations

import importlib
import os

import numpy as np

from . import purepy

_REQUESTED = os.environ.get("CADSCRIPT_BACKEND", "auto").strip().lower() or "auto"
if _REQUESTED not in ("auto", "compiled", "pure"):
    raise RuntimeError(
        f"CADSCRIPT_BACKEND must be 'auto', 'compiled' or 'pure', got {_REQUESTED!r}"
    )

_fastcore = None
if _REQUESTED in ("auto", "compiled"):
    try:
        _fastcore = importlib.import_module("._fastcore", __name__)
    except ImportError:
        if _REQUESTED == "compiled":
            raise RuntimeError(
                "CADSCRIPT_BACKEND=compiled but the _fastcore extension is not built; "
                "reinstall with Cython available or drop the override"
            ) from None

BACKEND_NAME = "pure" if _fastcore is None else "compiled"


def _as_verts(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 3)


def _as_tris(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int32).reshape(-1, 3)


def bsp_boolean(op: str, verts_a, tris_a, verts_b, tris_b):
    """Boolean of two triangle meshes; returns an unwelded triangle soup
    (vertices, triangles) for the cleanup pipeline."""
    va, ta = _as_verts(verts_a), _as_tris(tris_a)
    vb, tb = _as_verts(verts_b), _as_tris(tris_b)
    if _fastcore is not None:
        return _fastcore.bsp_boolean(op, va, ta, vb, tb)
    return purepy.bsp_boolean(op, va, ta, vb, tb)


def make_ray_tracer(vertices, triangles):
    """Build an any-hit tracer: ``trace(origins, direction) -> bool (n,)``.

    Hits count for strictly positive ray parameters; edge and vertex
    grazes count as hits.
    """
    v = _as_verts(vertices)
    t = _as_tris(triangles)
    if t.size == 0:
        return lambda origins, direction: np.zeros(
            np.atleast_2d(origins).shape[0], dtype=bool
        )
    if _fastcore is None:
        return purepy.make_ray_tracer(v, t)

    from .bvh import build_bvh

    v0 = v[t[:, 0]].astype(np.float64)
    e1 = v[t[:, 1]].astype(np.float64) - v0
    e2 = v[t[:, 2]].astype(np.float64) - v0
    v0 = np.ascontiguousarray(v0)
    e1 = np.ascontiguousarray(e1)
    e2 = np.ascontiguousarray(e2)
    b = build_bvh(v, t)

    def trace(origins, direction):
        origins = np.ascontiguousarray(np.atleast_2d(origins), dtype=np.float64)
        dx, dy, dz = (float(c) for c in direction)
        return _fastcore.ray_any_hit(
            origins, dx, dy, dz, v0, e1, e2,
            b["bmin"], b["bmax"], b["left"], b["right"],
            b["start"], b["count"], b["order"],
        )

    return trace
