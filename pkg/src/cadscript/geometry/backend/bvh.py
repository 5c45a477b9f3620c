"""Flat-array bounding volume hierarchy over triangles.

Median split on centroids along the widest axis, stable sorts throughout,
so the layout is deterministic.  Consumed by the compiled ray kernel; the
pure backend brute-forces instead and never reads one.
"""

from __future__ import annotations

import numpy as np

LEAF_SIZE = 8

# Node bounds get padded so rays grazing a box face exactly are never
# pruned by rounding; keeps compiled and pure any-hit answers identical.
_PAD = 1e-9


def build_bvh(vertices: np.ndarray, triangles: np.ndarray) -> dict[str, np.ndarray]:
    """Returns flat arrays: bmin/bmax (nodes, 3), left/right/start/count
    (nodes,), order (tris,).  Leaves have left == -1 and cover
    order[start : start + count]."""
    m = len(triangles)
    if m == 0:
        raise ValueError("cannot build a BVH over zero triangles")
    pts = vertices[triangles]
    tmin = pts.min(axis=1)
    tmax = pts.max(axis=1)
    centroids = (tmin + tmax) * 0.5

    order = np.arange(m, dtype=np.int32)
    bmin: list[np.ndarray] = []
    bmax: list[np.ndarray] = []
    left: list[int] = []
    right: list[int] = []
    start: list[int] = []
    count: list[int] = []

    def new_node() -> int:
        bmin.append(np.zeros(3))
        bmax.append(np.zeros(3))
        left.append(-1)
        right.append(-1)
        start.append(0)
        count.append(0)
        return len(left) - 1

    root = new_node()
    stack = [(root, 0, m)]
    while stack:
        ni, lo, hi = stack.pop()
        seg = order[lo:hi]
        bmin[ni] = tmin[seg].min(axis=0) - _PAD
        bmax[ni] = tmax[seg].max(axis=0) + _PAD
        if hi - lo <= LEAF_SIZE:
            start[ni] = lo
            count[ni] = hi - lo
            continue
        cmin = centroids[seg].min(axis=0)
        cmax = centroids[seg].max(axis=0)
        axis = int(np.argmax(cmax - cmin))
        if cmax[axis] - cmin[axis] == 0.0:
            start[ni] = lo
            count[ni] = hi - lo
            continue
        idx = np.argsort(centroids[seg, axis], kind="stable")
        order[lo:hi] = seg[idx]
        mid = (lo + hi) // 2
        li = new_node()
        ri = new_node()
        left[ni] = li
        right[ni] = ri
        stack.append((ri, mid, hi))
        stack.append((li, lo, mid))

    return {
        "bmin": np.ascontiguousarray(np.vstack(bmin), dtype=np.float64),
        "bmax": np.ascontiguousarray(np.vstack(bmax), dtype=np.float64),
        "left": np.array(left, dtype=np.int32),
        "right": np.array(right, dtype=np.int32),
        "start": np.array(start, dtype=np.int32),
        "count": np.array(count, dtype=np.int32),
        "order": order,
    }
