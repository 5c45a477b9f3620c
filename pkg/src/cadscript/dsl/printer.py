"""Canonical text form for programs.

``parse(pretty_print(p)) == p`` for every valid program: quantities are
printed in meters without unit suffixes, defaulted clauses are either
omitted (placement at the origin) or printed in full (edge parameter,
sun-study interval and cell size), and floats use the shortest exact
representation.
"""

from __future__ import annotations

import math
from typing import List

from .ast import (
    At,
    Bake,
    BooleanOp,
    CreateBox,
    CreateGrid,
    CreateHypar,
    CreateSphere,
    Delete,
    Move,
    OnEdge,
    OnRandomEdge,
    Program,
    Statement,
    SunStudy,
    Undo,
)

_ORIGIN = (0.0, 0.0, 0.0)


def _num(value: float) -> str:
    if math.isfinite(value) and value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _nums(*values: float) -> str:
    return " ".join(_num(v) for v in values)


def _statement_text(s: Statement) -> str:
    if isinstance(s, CreateBox):
        text = f"box {_nums(*s.extents)}"
        if s.placement.point != _ORIGIN:
            text += f" at {_nums(*s.placement.point)}"
        return text + _name_suffix(s.name)
    if isinstance(s, CreateSphere):
        text = f"sphere {_num(s.radius)}"
        if isinstance(s.placement, At):
            if s.placement.point != _ORIGIN:
                text += f" at {_nums(*s.placement.point)}"
        elif isinstance(s.placement, OnEdge):
            text += f" on edge {s.placement.target} {s.placement.edge} {_num(s.placement.t)}"
        elif isinstance(s.placement, OnRandomEdge):
            text += f" on edge {s.placement.target} random"
        if s.quality is not None:
            text += f" quality {s.quality}"
        return text + _name_suffix(s.name)
    if isinstance(s, CreateHypar):
        return (
            f"hypar {_nums(s.plan_width, s.plan_depth)}"
            f" corners {_nums(*s.corner_heights)}"
            f" thickness {_num(s.thickness)}" + _name_suffix(s.name)
        )
    if isinstance(s, CreateGrid):
        return (
            f"grid {s.rows} {s.cols}"
            f" footprint {_nums(*s.footprint)}"
            f" height {_num(s.height)}"
            f" spacing {_num(s.spacing)}" + _name_suffix(s.name_prefix)
        )
    if isinstance(s, BooleanOp):
        return f"{s.kind} {s.a} {s.b}" + _name_suffix(s.name)
    if isinstance(s, Move):
        return f"move {s.target} {_nums(*s.delta)}"
    if isinstance(s, Delete):
        return f"delete {s.target}"
    if isinstance(s, Bake):
        return f"bake {s.target}"
    if isinstance(s, SunStudy):
        return (
            f"sunstudy lat {_num(s.latitude_deg)} lon {_num(s.longitude_deg)}"
            f" date {s.date.isoformat()}"
            f" interval {s.interval_min} cell {_num(s.cell_size_m)}"
        )
    if isinstance(s, Undo):
        return "undo"
    raise TypeError(f"unknown statement type {type(s).__name__}")


def _name_suffix(name) -> str:
    return f" name {name}" if name is not None else ""


def pretty_print(program: Program) -> str:
    """Render ``program`` as canonical source text, one statement per line."""
    lines: List[str] = [_statement_text(s) for s in program.statements]
    return "".join(line + "\n" for line in lines)
