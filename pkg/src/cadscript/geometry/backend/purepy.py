"""Pure-Python geometry kernels.

Reference implementation for the compiled extension.  The arithmetic is
written expression-for-expression the same as in ``_fastcore.pyx`` so both
backends produce identical output down to the last bit, which lets the test
suite assert exact cross-backend agreement instead of approximate.

All BSP traversals use explicit stacks.  Convex solids produce trees that
degenerate to chains (depth close to the polygon count), far past any
comfortable recursion limit.
"""

from __future__ import annotations

from math import sqrt

import numpy as np

BACKEND_NAME = "pure"

PLANE_EPS = 1e-9

_COPLANAR = 0
_FRONT = 1
_BACK = 2
_SPANNING = 3


class _Poly:
    __slots__ = ("verts", "plane")

    def __init__(self, verts, plane):
        self.verts = verts
        self.plane = plane


class _Node:
    __slots__ = ("plane", "front", "back", "polygons")

    def __init__(self):
        self.plane = None
        self.front = None
        self.back = None
        self.polygons = []


def _plane_from_points(a, b, c):
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    nx = uy * vz - uz * vy
    ny = uz * vx - ux * vz
    nz = ux * vy - uy * vx
    norm = sqrt(nx * nx + ny * ny + nz * nz)
    if norm == 0.0:
        return None
    nx /= norm
    ny /= norm
    nz /= norm
    return (nx, ny, nz, nx * a[0] + ny * a[1] + nz * a[2])


def _flip(poly):
    poly.verts.reverse()
    nx, ny, nz, w = poly.plane
    poly.plane = (-nx, -ny, -nz, -w)


def _split(plane, poly, coplanar_front, coplanar_back, front, back):
    """Classify ``poly`` against ``plane`` and route it (or its two halves)
    into the output buckets.  Split fragments keep the parent's plane."""
    nx, ny, nz, w = plane
    verts = poly.verts
    types = []
    ptype = 0
    for x, y, z in verts:
        t = nx * x + ny * y + nz * z - w
        if t < -PLANE_EPS:
            tt = _BACK
        elif t > PLANE_EPS:
            tt = _FRONT
        else:
            tt = _COPLANAR
        ptype |= tt
        types.append(tt)

    if ptype == _COPLANAR:
        pn = poly.plane
        if nx * pn[0] + ny * pn[1] + nz * pn[2] > 0.0:
            coplanar_front.append(poly)
        else:
            coplanar_back.append(poly)
    elif ptype == _FRONT:
        front.append(poly)
    elif ptype == _BACK:
        back.append(poly)
    else:
        f = []
        b = []
        n = len(verts)
        for i in range(n):
            j = i + 1
            if j == n:
                j = 0
            ti = types[i]
            tj = types[j]
            vi = verts[i]
            vj = verts[j]
            if ti != _BACK:
                f.append(vi)
            if ti != _FRONT:
                b.append(vi)
            if (ti | tj) == _SPANNING:
                denom = nx * (vj[0] - vi[0]) + ny * (vj[1] - vi[1]) + nz * (vj[2] - vi[2])
                t = (w - (nx * vi[0] + ny * vi[1] + nz * vi[2])) / denom
                v = (
                    vi[0] + t * (vj[0] - vi[0]),
                    vi[1] + t * (vj[1] - vi[1]),
                    vi[2] + t * (vj[2] - vi[2]),
                )
                f.append(v)
                b.append(v)
        if len(f) >= 3:
            front.append(_Poly(f, poly.plane))
        if len(b) >= 3:
            back.append(_Poly(b, poly.plane))


def _build(root, polys):
    stack = [(root, polys)]
    while stack:
        node, plist = stack.pop()
        if not plist:
            continue
        if node.plane is None:
            node.plane = plist[0].plane
        f = []
        b = []
        for p in plist:
            _split(node.plane, p, node.polygons, node.polygons, f, b)
        if b:
            if node.back is None:
                node.back = _Node()
            stack.append((node.back, b))
        if f:
            if node.front is None:
                node.front = _Node()
            stack.append((node.front, f))


def _invert(root):
    stack = [root]
    while stack:
        node = stack.pop()
        for p in node.polygons:
            _flip(p)
        if node.plane is not None:
            nx, ny, nz, w = node.plane
            node.plane = (-nx, -ny, -nz, -w)
        node.front, node.back = node.back, node.front
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)


def _clip_polygons(root, polys):
    """Polygons of ``polys`` that survive clipping against ``root``'s solid.

    Output order matches the recursive formulation (front subtree results
    before back subtree results): the back branch is pushed first and front
    fragments at a missing front child are emitted immediately.
    """
    if root.plane is None:
        return list(polys)
    out = []
    stack = [(root, polys)]
    while stack:
        node, plist = stack.pop()
        f = []
        b = []
        for p in plist:
            _split(node.plane, p, f, b, f, b)
        if node.back is not None:
            stack.append((node.back, b))
        if node.front is not None:
            stack.append((node.front, f))
        else:
            out.extend(f)
    return out


def _clip_to(dst, clip_root):
    stack = [dst]
    while stack:
        node = stack.pop()
        node.polygons = _clip_polygons(clip_root, node.polygons)
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)


def _all_polygons(root):
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        out.extend(node.polygons)
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)
    return out


def _mesh_polys(vertices, triangles):
    vlist = vertices.tolist()
    polys = []
    for a, b, c in triangles.tolist():
        pa = tuple(vlist[a])
        pb = tuple(vlist[b])
        pc = tuple(vlist[c])
        plane = _plane_from_points(pa, pb, pc)
        if plane is None:
            continue
        polys.append(_Poly([pa, pb, pc], plane))
    return polys


def _polys_to_soup(polys):
    verts = []
    tris = []
    for p in polys:
        pv = p.verts
        base = len(verts)
        verts.extend(pv)
        for k in range(1, len(pv) - 1):
            tris.append((base, base + k, base + k + 1))
    vertices = np.array(verts, dtype=np.float64).reshape(-1, 3)
    triangles = np.array(tris, dtype=np.int32).reshape(-1, 3)
    return vertices, triangles


def bsp_boolean(op, verts_a, tris_a, verts_b, tris_b):
    """CSG boolean of two triangle meshes via BSP clipping.

    Returns an unwelded triangle soup (vertices, triangles); fan
    triangulation of the clip fragments, which are always convex.
    """
    a = _Node()
    _build(a, _mesh_polys(verts_a, tris_a))
    b = _Node()
    _build(b, _mesh_polys(verts_b, tris_b))

    if op == "union":
        _clip_to(a, b)
        _clip_to(b, a)
        _invert(b)
        _clip_to(b, a)
        _invert(b)
        _build(a, _all_polygons(b))
    elif op == "difference":
        _invert(a)
        _clip_to(a, b)
        _clip_to(b, a)
        _invert(b)
        _clip_to(b, a)
        _invert(b)
        _build(a, _all_polygons(b))
        _invert(a)
    elif op == "intersection":
        _invert(a)
        _clip_to(b, a)
        _invert(b)
        _clip_to(a, b)
        _clip_to(b, a)
        _build(a, _all_polygons(b))
        _invert(a)
    else:
        raise ValueError(f"unknown boolean op {op!r}")

    return _polys_to_soup(_all_polygons(a))


def make_ray_tracer(vertices, triangles, accel=None):
    """Batched any-hit ray caster (ignores ``accel``; brute force over
    triangles, chunked to bound memory).  Edge and vertex grazes count as
    hits; only strictly positive ray parameters count."""
    if triangles.size == 0:
        return lambda origins, direction: np.zeros(np.atleast_2d(origins).shape[0], dtype=bool)

    v0 = vertices[triangles[:, 0]].astype(np.float64)
    v1 = vertices[triangles[:, 1]].astype(np.float64)
    v2 = vertices[triangles[:, 2]].astype(np.float64)
    e1 = v1 - v0
    e2 = v2 - v0
    m = len(v0)
    chunk = max(1, 4_000_000 // m)

    def trace(origins, direction):
        origins = np.atleast_2d(np.asarray(origins, dtype=np.float64))
        dx, dy, dz = (float(c) for c in direction)
        px = dy * e2[:, 2] - dz * e2[:, 1]
        py = dz * e2[:, 0] - dx * e2[:, 2]
        pz = dx * e2[:, 1] - dy * e2[:, 0]
        det = e1[:, 0] * px + e1[:, 1] * py + e1[:, 2] * pz
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / det
        live = det != 0.0

        out = np.zeros(len(origins), dtype=bool)
        for s in range(0, len(origins), chunk):
            o = origins[s : s + chunk]
            sx = o[:, 0:1] - v0[:, 0]
            sy = o[:, 1:2] - v0[:, 1]
            sz = o[:, 2:3] - v0[:, 2]
            with np.errstate(invalid="ignore"):
                u = (sx * px + sy * py + sz * pz) * inv
                qx = sy * e1[:, 2] - sz * e1[:, 1]
                qy = sz * e1[:, 0] - sx * e1[:, 2]
                qz = sx * e1[:, 1] - sy * e1[:, 0]
                v = (dx * qx + dy * qy + dz * qz) * inv
                t = (e2[:, 0] * qx + e2[:, 1] * qy + e2[:, 2] * qz) * inv
                hit = live & (u >= 0.0) & (u <= 1.0) & (v >= 0.0) & (u + v <= 1.0) & (t > 0.0)
            out[s : s + chunk] = hit.any(axis=1)
        return out

    return trace
