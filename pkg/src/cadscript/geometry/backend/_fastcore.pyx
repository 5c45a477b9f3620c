# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled geometry kernels.

Transliteration of purepy.py with C loops.  Every floating-point
expression here mirrors the pure implementation operation for operation
(and the build disables FP contraction), so both backends produce
bit-identical output; the test suite relies on that.
"""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

import numpy as np

BACKEND_NAME = "compiled"

cdef double PLANE_EPS = 1e-9

cdef int COPLANAR = 0
cdef int FRONT = 1
cdef int BACK = 2
cdef int SPANNING = 3


cdef class _Poly:
    cdef double* v
    cdef int n
    cdef double nx, ny, nz, w

    def __dealloc__(self):
        if self.v != NULL:
            free(self.v)


cdef _Poly _new_poly(int n):
    cdef _Poly p = _Poly.__new__(_Poly)
    p.v = <double*> malloc(3 * n * sizeof(double))
    p.n = n
    return p


cdef void _flip(_Poly p):
    cdef int i = 0, j = p.n - 1, k
    cdef double t
    while i < j:
        for k in range(3):
            t = p.v[3 * i + k]
            p.v[3 * i + k] = p.v[3 * j + k]
            p.v[3 * j + k] = t
        i += 1
        j -= 1
    p.nx = -p.nx
    p.ny = -p.ny
    p.nz = -p.nz
    p.w = -p.w


cdef class _Node:
    cdef bint has_plane
    cdef double nx, ny, nz, w
    cdef _Node front, back
    cdef list polygons

    def __cinit__(self):
        self.has_plane = False
        self.front = None
        self.back = None
        self.polygons = []


cdef void _split(double nx, double ny, double nz, double w, _Poly poly,
                 list coplanar_front, list coplanar_back, list front, list back):
    cdef int n = poly.n
    cdef int* types = <int*> malloc(n * sizeof(int))
    cdef int ptype = 0, i, j, ti, tj, tt, fn, bn
    cdef double t, x, y, z, denom
    cdef double vix, viy, viz, vjx, vjy, vjz, cx, cy, cz
    cdef double* fv
    cdef double* bv
    cdef _Poly out

    for i in range(n):
        x = poly.v[3 * i]
        y = poly.v[3 * i + 1]
        z = poly.v[3 * i + 2]
        t = nx * x + ny * y + nz * z - w
        if t < -PLANE_EPS:
            tt = BACK
        elif t > PLANE_EPS:
            tt = FRONT
        else:
            tt = COPLANAR
        ptype |= tt
        types[i] = tt

    if ptype == COPLANAR:
        if nx * poly.nx + ny * poly.ny + nz * poly.nz > 0.0:
            coplanar_front.append(poly)
        else:
            coplanar_back.append(poly)
    elif ptype == FRONT:
        front.append(poly)
    elif ptype == BACK:
        back.append(poly)
    else:
        fv = <double*> malloc(3 * (2 * n + 2) * sizeof(double))
        bv = <double*> malloc(3 * (2 * n + 2) * sizeof(double))
        fn = 0
        bn = 0
        for i in range(n):
            j = i + 1
            if j == n:
                j = 0
            ti = types[i]
            tj = types[j]
            vix = poly.v[3 * i]
            viy = poly.v[3 * i + 1]
            viz = poly.v[3 * i + 2]
            if ti != BACK:
                fv[3 * fn] = vix
                fv[3 * fn + 1] = viy
                fv[3 * fn + 2] = viz
                fn += 1
            if ti != FRONT:
                bv[3 * bn] = vix
                bv[3 * bn + 1] = viy
                bv[3 * bn + 2] = viz
                bn += 1
            if (ti | tj) == SPANNING:
                vjx = poly.v[3 * j]
                vjy = poly.v[3 * j + 1]
                vjz = poly.v[3 * j + 2]
                denom = nx * (vjx - vix) + ny * (vjy - viy) + nz * (vjz - viz)
                t = (w - (nx * vix + ny * viy + nz * viz)) / denom
                cx = vix + t * (vjx - vix)
                cy = viy + t * (vjy - viy)
                cz = viz + t * (vjz - viz)
                fv[3 * fn] = cx
                fv[3 * fn + 1] = cy
                fv[3 * fn + 2] = cz
                fn += 1
                bv[3 * bn] = cx
                bv[3 * bn + 1] = cy
                bv[3 * bn + 2] = cz
                bn += 1
        if fn >= 3:
            out = _new_poly(fn)
            memcpy(out.v, fv, 3 * fn * sizeof(double))
            out.nx = poly.nx
            out.ny = poly.ny
            out.nz = poly.nz
            out.w = poly.w
            front.append(out)
        if bn >= 3:
            out = _new_poly(bn)
            memcpy(out.v, bv, 3 * bn * sizeof(double))
            out.nx = poly.nx
            out.ny = poly.ny
            out.nz = poly.nz
            out.w = poly.w
            back.append(out)
        free(fv)
        free(bv)
    free(types)


cdef void _build(_Node root, list polys):
    cdef list stack = [(root, polys)]
    cdef list plist, f, b
    cdef _Node node
    cdef _Poly p0, p
    while stack:
        node, plist = stack.pop()
        if not plist:
            continue
        if not node.has_plane:
            p0 = <_Poly> plist[0]
            node.nx = p0.nx
            node.ny = p0.ny
            node.nz = p0.nz
            node.w = p0.w
            node.has_plane = True
        f = []
        b = []
        for p in plist:
            _split(node.nx, node.ny, node.nz, node.w, p,
                   node.polygons, node.polygons, f, b)
        if b:
            if node.back is None:
                node.back = _Node()
            stack.append((node.back, b))
        if f:
            if node.front is None:
                node.front = _Node()
            stack.append((node.front, f))


cdef void _invert(_Node root):
    cdef list stack = [root]
    cdef _Node node, tmp
    cdef _Poly p
    while stack:
        node = stack.pop()
        for p in node.polygons:
            _flip(p)
        if node.has_plane:
            node.nx = -node.nx
            node.ny = -node.ny
            node.nz = -node.nz
            node.w = -node.w
        tmp = node.front
        node.front = node.back
        node.back = tmp
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)


cdef list _clip_polygons(_Node root, list polys):
    if not root.has_plane:
        return list(polys)
    cdef list out = []
    cdef list stack = [(root, polys)]
    cdef list plist, f, b
    cdef _Node node
    cdef _Poly p
    while stack:
        node, plist = stack.pop()
        f = []
        b = []
        for p in plist:
            _split(node.nx, node.ny, node.nz, node.w, p, f, b, f, b)
        if node.back is not None:
            stack.append((node.back, b))
        if node.front is not None:
            stack.append((node.front, f))
        else:
            out.extend(f)
    return out


cdef void _clip_to(_Node dst, _Node clip_root):
    cdef list stack = [dst]
    cdef _Node node
    while stack:
        node = stack.pop()
        node.polygons = _clip_polygons(clip_root, node.polygons)
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)


cdef list _all_polygons(_Node root):
    cdef list out = []
    cdef list stack = [root]
    cdef _Node node
    while stack:
        node = stack.pop()
        out.extend(node.polygons)
        if node.back is not None:
            stack.append(node.back)
        if node.front is not None:
            stack.append(node.front)
    return out


cdef list _mesh_polys(const double[:, ::1] vertices, const int[:, ::1] triangles):
    cdef list polys = []
    cdef int k, a, b, c
    cdef double ax, ay, az, bx, by, bz, cx, cy, cz
    cdef double ux, uy, uz, vx, vy, vz, nx, ny, nz, norm
    cdef _Poly p
    for k in range(triangles.shape[0]):
        a = triangles[k, 0]
        b = triangles[k, 1]
        c = triangles[k, 2]
        ax = vertices[a, 0]
        ay = vertices[a, 1]
        az = vertices[a, 2]
        bx = vertices[b, 0]
        by = vertices[b, 1]
        bz = vertices[b, 2]
        cx = vertices[c, 0]
        cy = vertices[c, 1]
        cz = vertices[c, 2]
        ux = bx - ax
        uy = by - ay
        uz = bz - az
        vx = cx - ax
        vy = cy - ay
        vz = cz - az
        nx = uy * vz - uz * vy
        ny = uz * vx - ux * vz
        nz = ux * vy - uy * vx
        norm = sqrt(nx * nx + ny * ny + nz * nz)
        if norm == 0.0:
            continue
        nx /= norm
        ny /= norm
        nz /= norm
        p = _new_poly(3)
        p.v[0] = ax
        p.v[1] = ay
        p.v[2] = az
        p.v[3] = bx
        p.v[4] = by
        p.v[5] = bz
        p.v[6] = cx
        p.v[7] = cy
        p.v[8] = cz
        p.nx = nx
        p.ny = ny
        p.nz = nz
        p.w = nx * ax + ny * ay + nz * az
        polys.append(p)
    return polys


cdef tuple _polys_to_soup(list polys):
    cdef int total = 0, ntris = 0
    cdef _Poly p
    for p in polys:
        total += p.n
        ntris += p.n - 2
    vertices = np.empty((total, 3), dtype=np.float64)
    triangles = np.empty((ntris, 3), dtype=np.int32)
    cdef double[:, ::1] vv = vertices
    cdef int[:, ::1] tv = triangles
    cdef int base = 0, ti = 0, i, k
    for p in polys:
        for i in range(p.n):
            vv[base + i, 0] = p.v[3 * i]
            vv[base + i, 1] = p.v[3 * i + 1]
            vv[base + i, 2] = p.v[3 * i + 2]
        for k in range(1, p.n - 1):
            tv[ti, 0] = base
            tv[ti, 1] = base + k
            tv[ti, 2] = base + k + 1
            ti += 1
        base += p.n
    return vertices, triangles


def bsp_boolean(op, const double[:, ::1] verts_a, const int[:, ::1] tris_a,
                const double[:, ::1] verts_b, const int[:, ::1] tris_b):
    """CSG boolean of two triangle meshes; returns an unwelded soup."""
    cdef _Node a = _Node()
    _build(a, _mesh_polys(verts_a, tris_a))
    cdef _Node b = _Node()
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


cdef inline bint _mt_hit(double ox, double oy, double oz,
                         double dx, double dy, double dz,
                         double v0x, double v0y, double v0z,
                         double e1x, double e1y, double e1z,
                         double e2x, double e2y, double e2z) nogil:
    cdef double px, py, pz, det, inv, sx, sy, sz, u, qx, qy, qz, v, t
    px = dy * e2z - dz * e2y
    py = dz * e2x - dx * e2z
    pz = dx * e2y - dy * e2x
    det = e1x * px + e1y * py + e1z * pz
    if det == 0.0:
        return False
    inv = 1.0 / det
    sx = ox - v0x
    sy = oy - v0y
    sz = oz - v0z
    u = (sx * px + sy * py + sz * pz) * inv
    if u < 0.0 or u > 1.0:
        return False
    qx = sy * e1z - sz * e1y
    qy = sz * e1x - sx * e1z
    qz = sx * e1y - sy * e1x
    v = (dx * qx + dy * qy + dz * qz) * inv
    if v < 0.0 or u + v > 1.0:
        return False
    t = (e2x * qx + e2y * qy + e2z * qz) * inv
    return t > 0.0


cdef inline bint _aabb_hit(double ox, double oy, double oz,
                           double dx, double dy, double dz,
                           double bx0, double by0, double bz0,
                           double bx1, double by1, double bz1) nogil:
    cdef double tmin = -1e308, tmax = 1e308, t1, t2, t
    if dx == 0.0:
        if ox < bx0 or ox > bx1:
            return False
    else:
        t1 = (bx0 - ox) / dx
        t2 = (bx1 - ox) / dx
        if t1 > t2:
            t = t1
            t1 = t2
            t2 = t
        if t1 > tmin:
            tmin = t1
        if t2 < tmax:
            tmax = t2
    if dy == 0.0:
        if oy < by0 or oy > by1:
            return False
    else:
        t1 = (by0 - oy) / dy
        t2 = (by1 - oy) / dy
        if t1 > t2:
            t = t1
            t1 = t2
            t2 = t
        if t1 > tmin:
            tmin = t1
        if t2 < tmax:
            tmax = t2
    if dz == 0.0:
        if oz < bz0 or oz > bz1:
            return False
    else:
        t1 = (bz0 - oz) / dz
        t2 = (bz1 - oz) / dz
        if t1 > t2:
            t = t1
            t1 = t2
            t2 = t
        if t1 > tmin:
            tmin = t1
        if t2 < tmax:
            tmax = t2
    if tmax < tmin:
        return False
    return tmax >= 0.0


def ray_any_hit(const double[:, ::1] origins,
                double dx, double dy, double dz,
                const double[:, ::1] v0, const double[:, ::1] e1, const double[:, ::1] e2,
                const double[:, ::1] bmin, const double[:, ::1] bmax,
                const int[::1] left, const int[::1] right,
                const int[::1] start, const int[::1] count,
                const int[::1] order):
    """For each origin: does a ray along (dx, dy, dz) hit any triangle?

    Same edge-inclusive, strictly-positive-t hit rule as the pure
    backend; the BVH is only a pruning structure."""
    out = np.zeros(origins.shape[0], dtype=bool)
    cdef unsigned char[::1] ov = out.view(np.uint8)
    cdef int stack[256]
    cdef int sp, ni, k, ii, tidx
    cdef double ox, oy, oz
    cdef bint hit
    with nogil:
        for k in range(origins.shape[0]):
            ox = origins[k, 0]
            oy = origins[k, 1]
            oz = origins[k, 2]
            hit = False
            sp = 1
            stack[0] = 0
            while sp > 0 and not hit:
                sp -= 1
                ni = stack[sp]
                if not _aabb_hit(ox, oy, oz, dx, dy, dz,
                                 bmin[ni, 0], bmin[ni, 1], bmin[ni, 2],
                                 bmax[ni, 0], bmax[ni, 1], bmax[ni, 2]):
                    continue
                if left[ni] < 0:
                    for ii in range(start[ni], start[ni] + count[ni]):
                        tidx = order[ii]
                        if _mt_hit(ox, oy, oz, dx, dy, dz,
                                   v0[tidx, 0], v0[tidx, 1], v0[tidx, 2],
                                   e1[tidx, 0], e1[tidx, 1], e1[tidx, 2],
                                   e2[tidx, 0], e2[tidx, 1], e2[tidx, 2]):
                            hit = True
                            break
                else:
                    stack[sp] = right[ni]
                    sp += 1
                    stack[sp] = left[ni]
                    sp += 1
            ov[k] = 1 if hit else 0
    return out
