"""Semantic validation against a scene context.

``check_program`` walks the statements in order, simulating the naming
and bookkeeping the session will perform, and returns every violation
rather than stopping at the first; ``validate`` wraps that into
raise-or-return form.  Both are pure: the context is never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from ..geometry.primitives import DEFAULT_QUALITY
from ..naming import auto_object_name, boolean_result_name, grid_child_name
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
    Span,
    Statement,
    SunStudy,
    Undo,
)
from .errors import SemanticError, ValidationError

OBJECT_LIMIT = 10_000
TRIANGLE_LIMIT = 2_000_000
GRID_CELL_LIMIT = 10_000
INTERVAL_RANGE = (1, 120)


@dataclass(frozen=True)
class ObjectSummary:
    """What validation needs to know about an existing scene object."""

    kind: str
    triangle_count: int
    baked: bool = False


@dataclass(frozen=True)
class SceneContext:
    """Snapshot of the scene a program will run against."""

    objects: Mapping[str, ObjectSummary] = field(default_factory=dict)
    next_auto_index: int = 1

    @classmethod
    def empty(cls) -> "SceneContext":
        return cls()


@dataclass(frozen=True)
class ValidatedProgram:
    """A program that passed validation, with its predicted mesh budget."""

    program: Program
    predicted_triangles: int


def _sphere_triangles(segments: int) -> int:
    # Mirrors the sphere tessellation: two cap fans plus quad bands.
    rings = max(2, segments // 2)
    return 2 * segments * (rings - 1)


def _hypar_triangles(divisions: int) -> int:
    # Two bilinear sheets plus four side walls.
    return 4 * divisions * divisions + 8 * divisions


class _Walk:
    """Mutable simulation state for one validation pass."""

    def __init__(self, ctx: SceneContext) -> None:
        self.errors: List[SemanticError] = []
        self.objects: Dict[str, ObjectSummary] = dict(ctx.objects)
        self.counter = ctx.next_auto_index
        self.triangles = sum(o.triangle_count for o in self.objects.values())

    # -- findings ------------------------------------------------------

    def error(self, kind: str, message: str, span: Span) -> None:
        self.errors.append(SemanticError(kind, message, span))

    def finite(self, value: float, what: str, span: Span) -> bool:
        if not math.isfinite(value):
            self.error("range", f"{what} must be finite", span)
            return False
        return True

    def positive(self, value: float, what: str, span: Span) -> None:
        if self.finite(value, what, span) and value <= 0:
            self.error("non_positive", f"{what} must be positive", span)

    def in_range(self, value: float, lo: float, hi: float, what: str, span: Span) -> None:
        if not (lo <= value <= hi):
            self.error("range", f"{what} must be within {lo:g}..{hi:g}", span)

    # -- scene bookkeeping ---------------------------------------------

    def resolve(self, name: str, span: Span) -> Optional[ObjectSummary]:
        summary = self.objects.get(name)
        if summary is None:
            self.error("unknown_identifier", f"unknown object {name!r}", span)
        return summary

    def add(self, name: Optional[str], kind: str, triangles: int, span: Span) -> str:
        if name is None:
            name, self.counter = auto_object_name(self.objects, self.counter)
        elif name in self.objects:
            self.error("duplicate_name", f"duplicate name {name!r}", span)
        self.objects[name] = ObjectSummary(kind, triangles)
        self.triangles += triangles
        if len(self.objects) > OBJECT_LIMIT:
            self.error("limit", f"object limit exceeded ({OBJECT_LIMIT})", span)
        if self.triangles > TRIANGLE_LIMIT:
            self.error("limit", f"triangle limit exceeded ({TRIANGLE_LIMIT})", span)
        return name


def check_program(program: Program, ctx: Optional[SceneContext] = None) -> Tuple[SemanticError, ...]:
    """Return every semantic violation in ``program``, in statement order."""
    walk = _Walk(ctx if ctx is not None else SceneContext.empty())
    multi = len(program.statements) > 1
    for stmt in program.statements:
        _check_statement(walk, stmt, multi)
    return tuple(walk.errors)


def validate(program: Program, ctx: Optional[SceneContext] = None) -> ValidatedProgram:
    """Raise :class:`ValidationError` with all findings, or return the program."""
    walk = _Walk(ctx if ctx is not None else SceneContext.empty())
    multi = len(program.statements) > 1
    for stmt in program.statements:
        _check_statement(walk, stmt, multi)
    if walk.errors:
        raise ValidationError(tuple(walk.errors))
    return ValidatedProgram(program, walk.triangles)


def _check_statement(walk: _Walk, stmt: Statement, multi: bool) -> None:
    span = stmt.span
    if isinstance(stmt, CreateBox):
        for value, what in zip(stmt.extents, ("box width", "box depth", "box height")):
            walk.positive(value, what, span)
        for value in stmt.placement.point:
            walk.finite(value, "box position", span)
        walk.add(stmt.name, "box", 12, span)
    elif isinstance(stmt, CreateSphere):
        walk.positive(stmt.radius, "sphere radius", span)
        if isinstance(stmt.placement, At):
            for value in stmt.placement.point:
                walk.finite(value, "sphere position", span)
        elif isinstance(stmt.placement, (OnEdge, OnRandomEdge)):
            target = walk.resolve(stmt.placement.target, span)
            if target is not None and target.kind != "box":
                walk.error(
                    "wrong_kind",
                    f"edge placement target {stmt.placement.target!r} is not a box",
                    span,
                )
            if isinstance(stmt.placement, OnEdge):
                walk.in_range(stmt.placement.edge, 0, 11, "edge index", span)
                walk.in_range(stmt.placement.t, 0.0, 1.0, "edge parameter", span)
        segments = DEFAULT_QUALITY.sphere_segments
        if stmt.quality is not None:
            if stmt.quality < 8:
                walk.error("range", "sphere quality must be at least 8", span)
            else:
                segments = stmt.quality
        walk.add(stmt.name, "sphere", _sphere_triangles(segments), span)
    elif isinstance(stmt, CreateHypar):
        walk.positive(stmt.plan_width, "hypar plan width", span)
        walk.positive(stmt.plan_depth, "hypar plan depth", span)
        walk.positive(stmt.thickness, "hypar thickness", span)
        for value in stmt.corner_heights:
            walk.finite(value, "hypar corner height", span)
        walk.add(stmt.name, "hypar", _hypar_triangles(DEFAULT_QUALITY.hypar_divisions), span)
    elif isinstance(stmt, CreateGrid):
        if stmt.rows < 1:
            walk.error("non_positive", "grid rows must be positive", span)
        if stmt.cols < 1:
            walk.error("non_positive", "grid columns must be positive", span)
        if stmt.rows >= 1 and stmt.cols >= 1 and stmt.rows * stmt.cols > GRID_CELL_LIMIT:
            walk.error("limit", f"grid cell limit exceeded ({GRID_CELL_LIMIT})", span)
            return
        walk.positive(stmt.footprint[0], "grid footprint width", span)
        walk.positive(stmt.footprint[1], "grid footprint depth", span)
        walk.positive(stmt.height, "grid height", span)
        if walk.finite(stmt.spacing, "grid spacing", span) and stmt.spacing < 0:
            walk.error("range", "grid spacing must not be negative", span)
        if stmt.rows < 1 or stmt.cols < 1:
            return
        if stmt.name_prefix is not None:
            for row in range(stmt.rows):
                for col in range(stmt.cols):
                    walk.add(grid_child_name(stmt.name_prefix, row, col), "box", 12, span)
        else:
            for _ in range(stmt.rows * stmt.cols):
                walk.add(None, "box", 12, span)
    elif isinstance(stmt, BooleanOp):
        a = walk.resolve(stmt.a, span)
        b = walk.resolve(stmt.b, span)
        if stmt.a == stmt.b:
            walk.error("range", "boolean operands must be distinct", span)
        triangles = (a.triangle_count if a else 0) + (b.triangle_count if b else 0)
        name = stmt.name
        if name is None:
            name = boolean_result_name(stmt.kind, stmt.a, stmt.b, walk.objects)
        walk.add(name, "csg", triangles, span)
    elif isinstance(stmt, Move):
        target = walk.resolve(stmt.target, span)
        for value in stmt.delta:
            walk.finite(value, "move offset", span)
        if target is not None and target.baked:
            # Baked objects are immutable; the move lands on a fresh draft copy.
            walk.add(None, target.kind, target.triangle_count, span)
    elif isinstance(stmt, Delete):
        target = walk.resolve(stmt.target, span)
        if target is not None:
            del walk.objects[stmt.target]
            walk.triangles -= target.triangle_count
    elif isinstance(stmt, Bake):
        target = walk.resolve(stmt.target, span)
        if target is not None:
            walk.objects[stmt.target] = ObjectSummary(
                target.kind, target.triangle_count, baked=True
            )
    elif isinstance(stmt, SunStudy):
        walk.in_range(stmt.latitude_deg, -90.0, 90.0, "latitude", span)
        walk.in_range(stmt.longitude_deg, -180.0, 180.0, "longitude", span)
        walk.in_range(stmt.interval_min, INTERVAL_RANGE[0], INTERVAL_RANGE[1], "interval", span)
        if walk.finite(stmt.cell_size_m, "cell size", span) and stmt.cell_size_m <= 0:
            walk.error("non_positive", "cell size must be positive", span)
    elif isinstance(stmt, Undo):
        if multi:
            walk.error("misplaced", "undo must be the only statement in a batch", span)
    else:
        raise TypeError(f"unknown statement type {type(stmt).__name__}")
