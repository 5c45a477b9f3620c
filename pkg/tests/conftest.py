"""Shared fixtures: cheap tessellation presets and the seeded CSG pair
suite, which runs once per session and is asserted from two places (the
property tests and the acceptance gate)."""

import pytest

from cadscript.geometry import TessellationQuality


@pytest.fixture(scope="session")
def q16() -> TessellationQuality:
    """16-segment spheres / 8-division hypars; watertight but cheap."""
    return TessellationQuality(sphere_segments=16, hypar_divisions=8)


@pytest.fixture(scope="session")
def q24() -> TessellationQuality:
    return TessellationQuality(sphere_segments=24, hypar_divisions=16)


@pytest.fixture(scope="session")
def csg_suite():
    """Report of the 50-pair seeded box/sphere boolean suite (~3 min)."""
    from _csg_suite import run_suite

    return run_suite(50)


@pytest.fixture(scope="session")
def fuzz_report():
    """Report of the 100k-input parser fuzz run, shared with acceptance."""
    from _fuzz import run_fuzz

    return run_fuzz(100_000)
