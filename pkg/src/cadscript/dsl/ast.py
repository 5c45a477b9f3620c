"""Syntax tree for the command language.

All quantities are stored in canonical meters regardless of the unit
written in the source text, so two programs that differ only in units
compare equal.  Source spans are carried for error reporting but are
excluded from equality, which is what makes round-trip tests
(``parse(pretty_print(p)) == p``) meaningful.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class Span:
    """Byte range ``[start, end)`` of a construct in the source text."""

    start: int
    end: int


_NO_SPAN = Span(0, 0)


def _span_field() -> Span:
    # Spans matter for diagnostics, not for program identity.
    return field(default=_NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class At:
    """Absolute placement of an object's reference corner or center."""

    point: Tuple[float, float, float]


@dataclass(frozen=True)
class OnEdge:
    """Placement on a parametric point of a named box's edge.

    ``edge`` indexes the twelve box edges (0..3 bottom ring, 4..7
    verticals, 8..11 top ring); ``t`` is the parameter along the edge.
    """

    target: str
    edge: int
    t: float = 0.5


@dataclass(frozen=True)
class OnRandomEdge:
    """Placement on a uniformly random point of a named box's edges."""

    target: str


Placement = Union[At, OnEdge, OnRandomEdge]

ORIGIN = At((0.0, 0.0, 0.0))


@dataclass(frozen=True)
class CreateBox:
    extents: Tuple[float, float, float]
    placement: At = ORIGIN
    name: Optional[str] = None
    span: Span = _span_field()


@dataclass(frozen=True)
class CreateSphere:
    radius: float
    placement: Placement = ORIGIN
    quality: Optional[int] = None
    name: Optional[str] = None
    span: Span = _span_field()


@dataclass(frozen=True)
class CreateHypar:
    plan_width: float
    plan_depth: float
    corner_heights: Tuple[float, float, float, float]
    thickness: float
    name: Optional[str] = None
    span: Span = _span_field()


@dataclass(frozen=True)
class CreateGrid:
    rows: int
    cols: int
    footprint: Tuple[float, float]
    height: float
    spacing: float
    name_prefix: Optional[str] = None
    span: Span = _span_field()


@dataclass(frozen=True)
class BooleanOp:
    """CSG combination of two named objects.

    ``kind`` is the surface keyword: "union", "intersect" or
    "difference".
    """

    kind: str
    a: str
    b: str
    name: Optional[str] = None
    span: Span = _span_field()


@dataclass(frozen=True)
class Move:
    target: str
    delta: Tuple[float, float, float]
    span: Span = _span_field()


@dataclass(frozen=True)
class Delete:
    target: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Bake:
    target: str
    span: Span = _span_field()


@dataclass(frozen=True)
class SunStudy:
    latitude_deg: float
    longitude_deg: float
    date: dt.date
    interval_min: int = 10
    cell_size_m: float = 1.0
    span: Span = _span_field()


@dataclass(frozen=True)
class Undo:
    span: Span = _span_field()


Statement = Union[
    CreateBox,
    CreateSphere,
    CreateHypar,
    CreateGrid,
    BooleanOp,
    Move,
    Delete,
    Bake,
    SunStudy,
    Undo,
]


@dataclass(frozen=True)
class Program:
    """An ordered batch of statements; the empty program is valid."""

    statements: Tuple[Statement, ...] = ()
