"""Deterministic pattern-rule translator for air-gapped use and tests.

``offline_translate`` maps a small, documented set of phrasings to
canonical programs.  Under-specified requests are completed with loud
defaults (echoed back in execution messages so the user can refine):

- building grids: 5 x 5, footprint 10 x 10 m
- sun studies: Derby (52.92 N, 1.48 W), June 21 of the current year,
  10-minute interval, 1 m cells
- the pavilion canopy: 10 x 10 m plan, corner heights 3 6 6 3,
  thickness 0.2 m, named ``canopy``

The canopy follow-up rule ("make the canopy corners N meters higher")
rewrites against those documented canopy defaults, which keeps the
translator a pure function of the utterance alone.
"""

from __future__ import annotations

import datetime as dt
import re
from typing import Tuple

from ..dsl import Program, parse
from .errors import UnsupportedPhrase

DERBY_LAT = 52.92
DERBY_LON = -1.48

_CANOPY_PLAN = (10, 10)
_CANOPY_CORNERS = (3, 6, 6, 3)
_CANOPY_THICKNESS = 0.2

OFFLINE_TEMPLATES: Tuple[str, ...] = (
    "Create a <W>x<D>x<H> cm box, which is intersected by a sphere of <R> cm radius"
    " at a random edge. Bake their union on Rhino",
    "Design a pavilion with a hyperbolic canopy, inspired by the Candela structures",
    "Generate a grid of buildings <H> meters high, spaced <S> meters apart,"
    " and simulate the sunlight paths during the UK summer solstice",
    "make the canopy corners <N> meters higher",
)

_NUM = r"(\d+(?:\.\d+)?)"

_BOX_SPHERE_RE = re.compile(
    rf"create an? {_NUM}x{_NUM}x{_NUM} cm box,? which is intersected by a sphere"
    rf" of {_NUM} cm radius at a random edge\.? bake their union(?: on rhino)?\.?",
)
_PAVILION_RE = re.compile(
    r"design a pavilion with a hyperbolic canopy(?:, inspired by the candela structures)?\.?",
)
_GRID_RE = re.compile(
    rf"generate a grid of buildings {_NUM} meters? high,? spaced {_NUM} meters? apart,?"
    rf" and simulate the sunlight paths? during the uk summer solstice\.?",
)
_CANOPY_RAISE_RE = re.compile(
    rf"make the canopy corners {_NUM} meters? higher\.?",
)


def _normalize(utterance: str) -> str:
    return " ".join(utterance.split()).lower()


def _fmt(value: float) -> str:
    return str(int(value)) if value == int(value) else repr(float(value))


def offline_translate(utterance: str) -> Program:
    """Translate one supported phrasing into a program.

    Pure and deterministic; raises :class:`UnsupportedPhrase` (listing
    the supported templates) for anything outside the rule set.
    """
    text = _normalize(utterance)

    m = _BOX_SPHERE_RE.fullmatch(text)
    if m:
        w, d, h, r = (float(g) / 100.0 for g in m.groups())
        return parse(
            f"box {_fmt(w)} {_fmt(d)} {_fmt(h)} name b1\n"
            f"sphere {_fmt(r)} on edge b1 random name s1\n"
            "union b1 s1 name u1\n"
            "bake u1\n"
        )

    if _PAVILION_RE.fullmatch(text):
        pw, pd = _CANOPY_PLAN
        c = " ".join(_fmt(v) for v in _CANOPY_CORNERS)
        return parse(
            f"hypar {pw} {pd} corners {c} thickness {_fmt(_CANOPY_THICKNESS)} name canopy\n"
        )

    m = _GRID_RE.fullmatch(text)
    if m:
        height, spacing = (float(g) for g in m.groups())
        solstice = dt.date(dt.date.today().year, 6, 21)
        return parse(
            f"grid 5 5 footprint 10 10 height {_fmt(height)} spacing {_fmt(spacing)} name bldg\n"
            f"sunstudy lat {DERBY_LAT} lon {DERBY_LON} date {solstice.isoformat()}"
            " interval 10 cell 1\n"
        )

    m = _CANOPY_RAISE_RE.fullmatch(text)
    if m:
        lift = float(m.group(1))
        pw, pd = _CANOPY_PLAN
        c = " ".join(_fmt(v + lift) for v in _CANOPY_CORNERS)
        return parse(
            "delete canopy\n"
            f"hypar {pw} {pd} corners {c} thickness {_fmt(_CANOPY_THICKNESS)} name canopy\n"
        )

    raise UnsupportedPhrase(utterance, OFFLINE_TEMPLATES)
