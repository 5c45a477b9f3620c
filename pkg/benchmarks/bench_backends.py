#!/usr/bin/env python3
"""Compare the pure-Python and compiled kernel backends.

Times BSP booleans and shadow-ray batches on the same inputs, checks both
backends return identical bytes, and prints a small table.  Run from a
checkout with the extension built:

    python3 benchmarks/bench_backends.py [--quality 24] [--rays 20000]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from cadscript.geometry import backend, make_box, make_sphere
from cadscript.geometry.backend import purepy
from cadscript.geometry.primitives import TessellationQuality


def _fastcore_built() -> bool:
    try:
        importlib.import_module("cadscript.geometry.backend._fastcore")
        return True
    except ImportError:
        return False


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_boolean(compiled: bool, segments: int, repeats: int):
    box = make_box((1.0, 1.0, 1.0)).mesh
    ball = make_sphere(
        0.6, center=(0.5, 0.5, 0.5), quality=TessellationQuality(sphere_segments=segments)
    ).mesh
    args = (box.vertices, box.triangles, ball.vertices, ball.triangles)

    rows = []
    for op in ("union", "intersection", "difference"):
        pv, pt = purepy.bsp_boolean(op, *args)
        t_pure = _time(lambda: purepy.bsp_boolean(op, *args), repeats)
        if not compiled:
            rows.append((f"bsp {op}", t_pure, float("nan")))
            continue
        cv, ct = backend.bsp_boolean(op, *args)
        assert pv.tobytes() == cv.tobytes(), f"{op}: vertex mismatch"
        assert pt.tobytes() == ct.tobytes(), f"{op}: triangle mismatch"
        t_comp = _time(lambda: backend.bsp_boolean(op, *args), repeats)
        rows.append((f"bsp {op}", t_pure, t_comp))
    return rows


def bench_rays(compiled: bool, n_rays: int, repeats: int):
    rng = np.random.default_rng(7)
    scene = make_sphere(1.0, quality=TessellationQuality(sphere_segments=48)).mesh
    origins = np.column_stack(
        [rng.uniform(-2, 2, n_rays), rng.uniform(-2, 2, n_rays), np.full(n_rays, -3.0)]
    )
    direction = np.array([0.05, -0.02, 1.0])
    direction /= np.linalg.norm(direction)

    pure_trace = purepy.make_ray_tracer(scene.vertices, scene.triangles)
    pure_hit = pure_trace(origins, direction)
    t_pure = _time(lambda: pure_trace(origins, direction), repeats)
    if not compiled:
        return [(f"rays x{n_rays}", t_pure, float("nan"))]

    comp_trace = backend.make_ray_tracer(scene.vertices, scene.triangles)
    comp_hit = comp_trace(origins, direction)
    assert np.array_equal(np.asarray(pure_hit), np.asarray(comp_hit)), "ray hit mask mismatch"
    t_comp = _time(lambda: comp_trace(origins, direction), repeats)
    return [(f"rays x{n_rays}", t_pure, t_comp)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quality", type=int, default=24, help="sphere segments for booleans")
    ap.add_argument("--rays", type=int, default=20_000, help="shadow rays per batch")
    ap.add_argument("--repeats", type=int, default=3, help="timing repeats (best of)")
    args = ap.parse_args()

    compiled = _fastcore_built() and backend.BACKEND_NAME == "compiled"
    if not compiled:
        print("compiled extension not active; timing the pure backend only")

    rows = bench_boolean(compiled, args.quality, args.repeats)
    rows += bench_rays(compiled, args.rays, args.repeats)

    print(f"{'kernel':<18} {'pure (ms)':>10} {'compiled (ms)':>14} {'speedup':>8}")
    for name, t_pure, t_comp in rows:
        if np.isnan(t_comp):
            print(f"{name:<18} {t_pure * 1e3:>10.2f} {'-':>14} {'-':>8}")
        else:
            print(f"{name:<18} {t_pure * 1e3:>10.2f} {t_comp * 1e3:>14.2f} {t_pure / t_comp:>7.1f}x")
    if compiled:
        print("outputs: identical bytes on every kernel")


if __name__ == "__main__":
    main()
