"""Pattern-rule translator: supported phrasings and their exact programs."""

import datetime as dt

import pytest

from cadscript.dsl import parse, pretty_print
from cadscript.nl import UnsupportedPhrase, offline_translate

YEAR = dt.date.today().year

EX1_UTTERANCE = (
    "Create a 100x100x30 cm box, which is intersected by a sphere of 30 cm radius"
    " at a random edge. Bake their union on Rhino"
)
EX2_UTTERANCE = "Design a pavilion with a hyperbolic canopy, inspired by the Candela structures"
EX3_UTTERANCE = (
    "Generate a grid of buildings 15 meters high, spaced 20 meters apart,"
    " and simulate the sunlight paths during the UK summer solstice"
)


class TestSupportedPhrasings:
    def test_box_sphere_union(self):
        program = offline_translate(EX1_UTTERANCE)
        assert pretty_print(program) == (
            "box 1 1 0.3 name b1\n"
            "sphere 0.3 on edge b1 random name s1\n"
            "union b1 s1 name u1\n"
            "bake u1\n"
        )

    def test_pavilion_canopy(self):
        program = offline_translate(EX2_UTTERANCE)
        assert pretty_print(program) == (
            "hypar 10 10 corners 3 6 6 3 thickness 0.2 name canopy\n"
        )

    def test_building_grid_with_sun_study(self):
        program = offline_translate(EX3_UTTERANCE)
        assert pretty_print(program) == (
            "grid 5 5 footprint 10 10 height 15 spacing 20 name bldg\n"
            f"sunstudy lat 52.92 lon -1.48 date {YEAR}-06-21 interval 10 cell 1\n"
        )

    def test_canopy_raise_follow_up(self):
        program = offline_translate("make the canopy corners 2 meters higher")
        assert pretty_print(program) == (
            "delete canopy\n"
            "hypar 10 10 corners 5 8 8 5 thickness 0.2 name canopy\n"
        )

    def test_fractional_raise(self):
        program = offline_translate("make the canopy corners 0.5 meters higher")
        assert "corners 3.5 6.5 6.5 3.5" in pretty_print(program)


class TestRobustness:
    def test_case_and_spacing_insensitive(self):
        a = offline_translate(EX1_UTTERANCE)
        b = offline_translate(EX1_UTTERANCE.upper())
        c = offline_translate("  " + EX1_UTTERANCE.replace(" ", "  ") + " ")
        assert a == b == c

    def test_trailing_period_optional(self):
        assert offline_translate(EX2_UTTERANCE) == offline_translate(EX2_UTTERANCE + ".")

    def test_other_dimensions_flow_through(self):
        program = offline_translate(
            "Create a 200x50x120 cm box, which is intersected by a sphere of 45 cm"
            " radius at a random edge. Bake their union on Rhino"
        )
        assert pretty_print(program).startswith("box 2 0.5 1.2 name b1\nsphere 0.45 ")

    def test_deterministic(self):
        assert offline_translate(EX3_UTTERANCE) == offline_translate(EX3_UTTERANCE)

    def test_result_is_parsed_program(self):
        program = offline_translate(EX1_UTTERANCE)
        assert parse(pretty_print(program)) == program


class TestUnsupported:
    def test_unsupported_lists_templates(self):
        with pytest.raises(UnsupportedPhrase) as exc:
            offline_translate("Make me a spaceship")
        message = str(exc.value)
        assert "Make me a spaceship" in message
        assert "<W>x<D>x<H> cm box" in message
        assert "hyperbolic canopy" in message
        assert "summer solstice" in message

    def test_partial_match_rejected(self):
        with pytest.raises(UnsupportedPhrase):
            offline_translate("Create a 100x100x30 cm box")
