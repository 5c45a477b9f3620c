"""Property suite over 50 seeded box/sphere pairs (shared session report)
plus cheap algebraic identities on a smaller sample."""

import pytest

from _csg_suite import SUITE_QUALITY, make_pair
from cadscript.geometry import (
    boolean_difference,
    boolean_intersection,
    boolean_union,
    mesh_volume,
)


class TestPairSuite:
    def test_all_pairs_completed(self, csg_suite):
        assert len(csg_suite.pairs) == 50
        assert csg_suite.failures == []

    def test_watertight_outputs(self, csg_suite):
        assert csg_suite.watertight_ok

    def test_inclusion_exclusion_identity(self, csg_suite):
        assert csg_suite.incl_excl_worst < 0.02

    def test_volume_bounds_exact(self, csg_suite):
        assert csg_suite.bounds_ok

    def test_voxel_oracle_agreement(self, csg_suite):
        assert csg_suite.voxel_worst < 0.02

    def test_shell_rule_oracle_agreement(self, csg_suite):
        assert csg_suite.shell_ok

    def test_runtime_budget(self, csg_suite):
        assert csg_suite.elapsed_s < 300.0


@pytest.mark.parametrize("seed", [3, 11, 27, 40])
def test_partition_identity(seed, q16):
    """A splits into (A minus B) and (A and B): volumes must add back."""
    box, ball, _ = make_pair(seed, q16)
    va = mesh_volume(box.mesh)
    v_diff = mesh_volume(boolean_difference(box, ball).mesh)
    v_inter = mesh_volume(boolean_intersection(box, ball).mesh)
    assert abs(va - (v_diff + v_inter)) / va < 0.02


@pytest.mark.parametrize("seed", [5, 19, 33])
def test_difference_bounded_by_minuend(seed, q16):
    box, ball, _ = make_pair(seed, q16)
    v_diff = mesh_volume(boolean_difference(box, ball).mesh)
    assert v_diff <= mesh_volume(box.mesh) + 1e-12


@pytest.mark.parametrize("seed", [8, 21])
def test_union_contains_both_operands(seed, q16):
    box, ball, _ = make_pair(seed, q16)
    vu = mesh_volume(boolean_union(box, ball).mesh)
    assert vu >= mesh_volume(box.mesh) - 1e-12
    assert vu >= mesh_volume(ball.mesh) - 1e-12


def test_suite_quality_bounds_sphere_error():
    # the suite tessellation must keep the ball itself inside the oracle band
    import math

    from cadscript.geometry import make_sphere

    ball = make_sphere(1.0, quality=SUITE_QUALITY)
    exact = 4.0 / 3.0 * math.pi
    assert abs(mesh_volume(ball.mesh) - exact) / exact < 0.02
