"""Voxel-counting volume oracle: self-checks against closed forms."""

import math

import pytest

from cadscript.geometry import make_box, make_sphere, voxel_volume
from cadscript.geometry.membership import BoolNode, BoxLeaf


def test_unit_cube_128():
    assert voxel_volume(make_box((1.0, 1.0, 1.0)), 128) == pytest.approx(1.0, rel=0.03)


def test_sphere_256():
    v = voxel_volume(make_sphere(0.3), 256)
    exact = 4.0 / 3.0 * math.pi * 0.3**3
    assert abs(v - exact) / exact < 0.01


def test_empty_intersection_is_zero():
    tree = BoolNode(
        "intersection",
        BoxLeaf((0, 0, 0), (1, 1, 1)),
        BoxLeaf((5, 5, 5), (6, 6, 6)),
    )
    for res in (16, 64, 128):
        assert voxel_volume(tree, res) == 0.0


def test_accepts_membership_tree_directly():
    tree = BoxLeaf((0, 0, 0), (2, 1, 1))
    assert voxel_volume(tree, 64) == pytest.approx(2.0, rel=0.05)


def test_resolution_range_enforced():
    box = make_box((1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        voxel_volume(box, 15)
    with pytest.raises(ValueError):
        voxel_volume(box, 513)


def test_error_shrinks_with_resolution():
    ball = make_sphere(0.5)
    exact = 4.0 / 3.0 * math.pi * 0.5**3
    coarse = abs(voxel_volume(ball, 32) - exact)
    fine = abs(voxel_volume(ball, 256) - exact)
    assert fine < coarse
