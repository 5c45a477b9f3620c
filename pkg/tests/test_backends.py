"""The compiled kernel must reproduce the pure-Python kernel bit for bit."""

import importlib

import numpy as np
import pytest

from cadscript.geometry import make_box, make_sphere
from cadscript.geometry.backend import purepy
from cadscript.geometry.backend.bvh import build_bvh

fastcore = pytest.importorskip(
    "cadscript.geometry.backend._fastcore",
    reason="compiled extension not built; nothing to compare",
)


def _pair(q16):
    box = make_box((1.0, 1.0, 0.3))
    ball = make_sphere(0.3, center=(0.5, 0.0, 0.3), quality=q16)
    return box.mesh, ball.mesh


@pytest.mark.parametrize("op", ["union", "intersection", "difference"])
def test_boolean_soups_identical(op, q16):
    ma, mb = _pair(q16)
    pv, pt = purepy.bsp_boolean(op, ma.vertices, ma.triangles, mb.vertices, mb.triangles)
    cv, ct = fastcore.bsp_boolean(op, ma.vertices, ma.triangles, mb.vertices, mb.triangles)
    assert pv.tobytes() == cv.tobytes()
    assert pt.tobytes() == ct.tobytes()


@pytest.mark.parametrize("seed", range(6))
def test_boolean_identical_on_random_pairs(seed, q16):
    from _csg_suite import make_pair

    box, ball, _ = make_pair(100 + seed, q16)
    for op in ("union", "intersection", "difference"):
        pv, pt = purepy.bsp_boolean(
            op, box.mesh.vertices, box.mesh.triangles, ball.mesh.vertices, ball.mesh.triangles
        )
        cv, ct = fastcore.bsp_boolean(
            op, box.mesh.vertices, box.mesh.triangles, ball.mesh.vertices, ball.mesh.triangles
        )
        assert pv.tobytes() == cv.tobytes(), f"{op} seed {seed}"
        assert pt.tobytes() == ct.tobytes(), f"{op} seed {seed}"


def test_ray_hits_identical(q24):
    scene = make_sphere(1.0, quality=q24).mesh
    rng = np.random.default_rng(11)
    origins = np.column_stack(
        [rng.uniform(-2, 2, 5000), rng.uniform(-2, 2, 5000), np.full(5000, -3.0)]
    )
    direction = np.array([0.1, -0.07, 1.0])
    direction /= np.linalg.norm(direction)

    pure_hit = purepy.make_ray_tracer(scene.vertices, scene.triangles)(origins, direction)

    t = scene.triangles
    v0 = np.ascontiguousarray(scene.vertices[t[:, 0]])
    e1 = np.ascontiguousarray(scene.vertices[t[:, 1]] - v0)
    e2 = np.ascontiguousarray(scene.vertices[t[:, 2]] - v0)
    b = build_bvh(scene.vertices, scene.triangles)
    comp_hit = fastcore.ray_any_hit(
        np.ascontiguousarray(origins), float(direction[0]), float(direction[1]),
        float(direction[2]), v0, e1, e2,
        b["bmin"], b["bmax"], b["left"], b["right"], b["start"], b["count"], b["order"],
    )
    assert np.array_equal(np.asarray(pure_hit), np.asarray(comp_hit))


def test_grazing_rays_identical(q16):
    # rays aimed exactly at the box edge plane: inclusive-hit rule on both sides
    box = make_box((1.0, 1.0, 1.0)).mesh
    origins = np.array(
        [
            [0.5, 0.5, -1.0],   # straight up through the middle
            [0.0, 0.0, -1.0],   # up the vertical edge
            [0.5, 0.0, -1.0],   # up a face plane
            [1.5, 0.5, -1.0],   # misses
        ]
    )
    direction = np.array([0.0, 0.0, 1.0])
    pure_hit = purepy.make_ray_tracer(box.vertices, box.triangles)(origins, direction)

    t = box.triangles
    v0 = np.ascontiguousarray(box.vertices[t[:, 0]])
    e1 = np.ascontiguousarray(box.vertices[t[:, 1]] - v0)
    e2 = np.ascontiguousarray(box.vertices[t[:, 2]] - v0)
    b = build_bvh(box.vertices, box.triangles)
    comp_hit = fastcore.ray_any_hit(
        np.ascontiguousarray(origins), 0.0, 0.0, 1.0, v0, e1, e2,
        b["bmin"], b["bmax"], b["left"], b["right"], b["start"], b["count"], b["order"],
    )
    assert np.array_equal(np.asarray(pure_hit), np.asarray(comp_hit))
    assert list(pure_hit) == [True, True, True, False]


def test_dispatcher_selects_a_backend():
    backend = importlib.import_module("cadscript.geometry.backend")
    assert backend.BACKEND_NAME in ("pure", "compiled")


def test_empty_mesh_tracer_reports_no_hits():
    from cadscript.geometry.backend import make_ray_tracer

    tracer = make_ray_tracer(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int32))
    hits = tracer(np.array([[0.0, 0.0, 0.0]]), np.array([0.0, 0.0, 1.0]))
    assert not hits.any()
