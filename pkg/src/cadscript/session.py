"""Scenes and interactive sessions.

A session owns a scene, a seeded RNG, and an append-only history of
successful command batches.  Batches are atomic: a snapshot of the
full session state is taken before execution and restored on any
failure, so a half-applied batch can never be observed.  ``undo`` pops
the last batch by restoring its pre-execution snapshot, which also
rewinds the RNG, keeping replays exact.

Solids and meshes are immutable, so snapshots copy the object table
and per-object bookkeeping while sharing mesh storage; isolation is
equivalent to a deep copy and is covered by tests.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import random
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import dsl
from .dsl import (
    At,
    Bake,
    BooleanOp,
    CreateBox,
    CreateGrid,
    CreateHypar,
    CreateSphere,
    Delete,
    Move,
    ObjectSummary,
    OnEdge,
    OnRandomEdge,
    Program,
    SceneContext,
    Statement,
    SunStudy,
    Undo,
)
from .geometry import (
    GeometryError,
    Solid,
    TessellationQuality,
    csg_boolean,
    edge_point,
    make_box,
    make_building_grid,
    make_hypar,
    make_sphere,
    random_edge_point,
)
from .naming import auto_object_name, boolean_result_name, grid_child_name
from .solar import GeoLocation, InsolationGrid, insolation_study

DRAFT = "draft"
BAKED = "baked"

# DSL surface keyword -> internal boolean op name.
_BOOL_OPS = {"union": "union", "intersect": "intersection", "difference": "difference"}


class SessionError(Exception):
    """Base class for session-level failures."""


class NothingToUndo(SessionError):
    """Raised by ``undo`` on a session with no history."""


class ExecutionError(SessionError):
    """A statement failed at run time; the batch was rolled back."""


@dataclass
class SceneObject:
    """One named solid plus its lifecycle state and origin batch."""

    id: str
    solid: Solid
    state: str = DRAFT
    batch_index: int = 0


class Scene:
    """Ordered table of named objects with an auto-name counter."""

    def __init__(self) -> None:
        self._objects: Dict[str, SceneObject] = {}
        self.next_auto_index = 1

    def __len__(self) -> int:
        return len(self._objects)

    def __contains__(self, name: str) -> bool:
        return name in self._objects

    def __iter__(self) -> Iterable[SceneObject]:
        return iter(self._objects.values())

    def objects(self) -> Tuple[SceneObject, ...]:
        return tuple(self._objects.values())

    def names(self) -> Tuple[str, ...]:
        return tuple(self._objects)

    def get(self, name: str) -> Optional[SceneObject]:
        return self._objects.get(name)

    def add(self, obj: SceneObject) -> None:
        if obj.id in self._objects:
            raise ExecutionError(f"duplicate name {obj.id!r}")
        self._objects[obj.id] = obj

    def remove(self, name: str) -> SceneObject:
        return self._objects.pop(name)

    def auto_name(self) -> str:
        name, self.next_auto_index = auto_object_name(self._objects, self.next_auto_index)
        return name

    def solids(self) -> List[Solid]:
        return [obj.solid for obj in self._objects.values()]

    def to_context(self) -> SceneContext:
        return SceneContext(
            {
                obj.id: ObjectSummary(
                    obj.solid.kind, obj.solid.mesh.triangle_count, obj.state == BAKED
                )
                for obj in self._objects.values()
            },
            self.next_auto_index,
        )

    def content_hash(self) -> str:
        """Hash of ids, states and mesh bytes in creation order."""
        digest = hashlib.sha256()
        digest.update(str(self.next_auto_index).encode())
        for obj in self._objects.values():
            digest.update(obj.id.encode())
            digest.update(obj.state.encode())
            digest.update(obj.solid.kind.encode())
            digest.update(obj.solid.mesh.vertices.tobytes())
            digest.update(obj.solid.mesh.triangles.tobytes())
        return digest.hexdigest()


@dataclass(frozen=True)
class ExecutionResult:
    """Outcome of one batch.  On error all mutation lists are empty."""

    created: Tuple[str, ...] = ()
    deleted: Tuple[str, ...] = ()
    baked: Tuple[str, ...] = ()
    messages: Tuple[str, ...] = ()
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class HistoryEntry:
    source: str
    program: Program
    result: ExecutionResult


@dataclass
class _Snapshot:
    objects: Dict[str, SceneObject]
    next_auto_index: int
    rng_state: object
    last_sun_study: Optional[InsolationGrid]


def _num(value: float) -> str:
    # Same shortest-form rule as the pretty printer; messages stay stable.
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


class _Batch:
    """Collects the effects of one in-flight batch."""

    def __init__(self) -> None:
        self.created: List[str] = []
        self.deleted: List[str] = []
        self.baked: List[str] = []
        self.messages: List[str] = []

    def result(self) -> ExecutionResult:
        return ExecutionResult(
            tuple(self.created), tuple(self.deleted), tuple(self.baked), tuple(self.messages)
        )


class Session:
    """Serial, seeded, undoable command execution against one scene."""

    def __init__(self, seed: int = 0, spacing_mode: str = "gap") -> None:
        if spacing_mode not in ("gap", "pitch"):
            raise ValueError(f"spacing_mode must be 'gap' or 'pitch', got {spacing_mode!r}")
        self.seed = int(seed)
        self.spacing_mode = spacing_mode
        self.scene = Scene()
        self.history: List[HistoryEntry] = []
        self.revision = 0
        self.last_sun_study: Optional[InsolationGrid] = None
        self._rng = random.Random(self.seed)
        self._snapshots: List[_Snapshot] = []

    # -- snapshots -----------------------------------------------------

    def _capture(self) -> _Snapshot:
        return _Snapshot(
            {obj.id: replace(obj) for obj in self.scene},
            self.scene.next_auto_index,
            self._rng.getstate(),
            self.last_sun_study,
        )

    def _restore(self, snap: _Snapshot) -> None:
        self.scene._objects = {name: replace(obj) for name, obj in snap.objects.items()}
        self.scene.next_auto_index = snap.next_auto_index
        self._rng.setstate(snap.rng_state)
        self.last_sun_study = snap.last_sun_study

    # -- execution -----------------------------------------------------

    def execute(
        self, command: Union[str, Program], source_text: Optional[str] = None
    ) -> ExecutionResult:
        """Parse (if needed), validate and run one batch atomically.

        Returns an :class:`ExecutionResult`; failures are reported in
        ``result.error`` rather than raised, and leave the session
        exactly as it was.
        """
        if isinstance(command, str):
            source = command if source_text is None else source_text
            try:
                program = dsl.parse(command)
            except dsl.DslError as exc:
                return ExecutionResult(error=str(exc))
        else:
            program = command
            source = dsl.pretty_print(program) if source_text is None else source_text

        if len(program.statements) == 1 and isinstance(program.statements[0], Undo):
            try:
                return self.undo()
            except NothingToUndo:
                return ExecutionResult(error="nothing to undo")

        try:
            dsl.validate(program, self.scene.to_context())
        except dsl.ValidationError as exc:
            return ExecutionResult(error=str(exc))

        snap = self._capture()
        batch = _Batch()
        try:
            for stmt in program.statements:
                self._run_statement(stmt, batch)
        except (SessionError, GeometryError) as exc:
            self._restore(snap)
            return ExecutionResult(error=str(exc))

        result = batch.result()
        self.history.append(HistoryEntry(source, program, result))
        self._snapshots.append(snap)
        self.revision += 1
        return result

    def undo(self) -> ExecutionResult:
        """Pop the last batch, restoring scene, RNG and sun study."""
        if not self.history:
            raise NothingToUndo("nothing to undo")
        entry = self.history.pop()
        self._restore(self._snapshots.pop())
        self.revision += 1
        n = len(entry.program.statements)
        return ExecutionResult(
            messages=(f"undid batch {len(self.history) + 1} ({n} statement{'s' if n != 1 else ''})",)
        )

    # -- statement handlers --------------------------------------------

    def _resolve(self, name: str) -> SceneObject:
        obj = self.scene.get(name)
        if obj is None:
            raise ExecutionError(f"unknown object {name!r}")
        return obj

    def _add(self, name: Optional[str], solid: Solid, batch: _Batch) -> SceneObject:
        obj_id = self.scene.auto_name() if name is None else name
        obj = SceneObject(obj_id, solid, DRAFT, len(self.history))
        self.scene.add(obj)
        batch.created.append(obj_id)
        return obj

    def _run_statement(self, stmt: Statement, batch: _Batch) -> None:
        if isinstance(stmt, CreateBox):
            obj = self._add(stmt.name, make_box(stmt.extents, stmt.placement.point), batch)
            w, d, h = stmt.extents
            batch.messages.append(
                f"created {obj.id} (box {_num(w)}×{_num(d)}×{_num(h)} m)"
            )
        elif isinstance(stmt, CreateSphere):
            self._create_sphere(stmt, batch)
        elif isinstance(stmt, CreateHypar):
            solid = make_hypar(
                stmt.plan_width, stmt.plan_depth, stmt.corner_heights, stmt.thickness
            )
            obj = self._add(stmt.name, solid, batch)
            batch.messages.append(
                f"created {obj.id} (hypar {_num(stmt.plan_width)}×{_num(stmt.plan_depth)} m,"
                f" thickness {_num(stmt.thickness)} m)"
            )
        elif isinstance(stmt, CreateGrid):
            self._create_grid(stmt, batch)
        elif isinstance(stmt, BooleanOp):
            a = self._resolve(stmt.a)
            b = self._resolve(stmt.b)
            solid = csg_boolean(_BOOL_OPS[stmt.kind], a.solid, b.solid)
            name = stmt.name
            if name is None:
                name = boolean_result_name(stmt.kind, stmt.a, stmt.b, self.scene.names())
            obj = self._add(name, solid, batch)
            batch.messages.append(
                f"created {obj.id} ({stmt.kind} of {stmt.a} and {stmt.b},"
                f" {solid.mesh.triangle_count} triangles)"
            )
        elif isinstance(stmt, Move):
            self._move(stmt, batch)
        elif isinstance(stmt, Delete):
            self._resolve(stmt.target)
            self.scene.remove(stmt.target)
            batch.deleted.append(stmt.target)
            batch.messages.append(f"deleted {stmt.target}")
        elif isinstance(stmt, Bake):
            obj = self._resolve(stmt.target)
            if obj.state == BAKED:
                batch.messages.append(f"{stmt.target} is already baked")
            else:
                obj.state = BAKED
                batch.baked.append(stmt.target)
                batch.messages.append(f"baked {stmt.target}")
        elif isinstance(stmt, SunStudy):
            self._sun_study(stmt, batch)
        elif isinstance(stmt, Undo):
            # validate() only lets a lone undo through, handled in execute().
            raise ExecutionError("undo must be the only statement in a batch")
        else:
            raise ExecutionError(f"unknown statement type {type(stmt).__name__}")

    def _create_sphere(self, stmt: CreateSphere, batch: _Batch) -> None:
        quality = (
            TessellationQuality(sphere_segments=stmt.quality)
            if stmt.quality is not None
            else TessellationQuality()
        )
        placement = stmt.placement
        detail = ""
        if isinstance(placement, At):
            center = placement.point
        elif isinstance(placement, OnEdge):
            target = self._resolve(placement.target)
            center = edge_point(target.solid, placement.edge, placement.t)
            detail = f" on edge {placement.edge} of {placement.target} at t={placement.t:.3f}"
        else:
            target = self._resolve(placement.target)
            center, edge, t = random_edge_point(target.solid, rng=self._rng)
            detail = f" on edge {edge} of {placement.target} at t={t:.3f}"
        obj = self._add(stmt.name, make_sphere(stmt.radius, center, quality), batch)
        batch.messages.append(f"created {obj.id} (sphere r={_num(stmt.radius)} m{detail})")

    def _create_grid(self, stmt: CreateGrid, batch: _Batch) -> None:
        solids = make_building_grid(
            stmt.rows,
            stmt.cols,
            stmt.footprint[0],
            stmt.footprint[1],
            stmt.height,
            stmt.spacing,
            self.spacing_mode,
        )
        names: List[str] = []
        for r in range(stmt.rows):
            for c in range(stmt.cols):
                solid = solids[r * stmt.cols + c]
                if stmt.name_prefix is not None:
                    name = grid_child_name(stmt.name_prefix, r, c)
                else:
                    name = None
                names.append(self._add(name, solid, batch).id)
        fw, fd = stmt.footprint
        batch.messages.append(
            f"created {len(names)} boxes {names[0]}..{names[-1]}"
            f" (footprint {_num(fw)}×{_num(fd)} m, height {_num(stmt.height)} m,"
            f" spacing {_num(stmt.spacing)} m)"
        )

    def _move(self, stmt: Move, batch: _Batch) -> None:
        obj = self._resolve(stmt.target)
        dx, dy, dz = stmt.delta
        if obj.state == BAKED:
            # Baked objects are immutable: the move lands on a fresh draft copy.
            copy = self._add(None, obj.solid.translated(stmt.delta), batch)
            batch.messages.append(
                f"{stmt.target} is baked; created moved copy {copy.id}"
                f" at offset ({_num(dx)}, {_num(dy)}, {_num(dz)}) m"
            )
        else:
            obj.solid = obj.solid.translated(stmt.delta)
            batch.messages.append(
                f"moved {stmt.target} by ({_num(dx)}, {_num(dy)}, {_num(dz)}) m"
            )

    def _sun_study(self, stmt: SunStudy, batch: _Batch) -> None:
        location = GeoLocation(stmt.latitude_deg, stmt.longitude_deg)
        grid = insolation_study(
            self.scene.solids(),
            location,
            stmt.date,
            interval_min=stmt.interval_min,
            cell_size=stmt.cell_size_m,
        )
        self.last_sun_study = grid
        stats = grid.unoccupied_stats()
        batch.messages.append(
            f"sun study at lat {_num(stmt.latitude_deg)} lon {_num(stmt.longitude_deg)}"
            f" on {stmt.date.isoformat()}"
            f" (interval {stmt.interval_min} min, cell {_num(stmt.cell_size_m)} m):"
            f" daylight {grid.daylight_hours:.2f} h,"
            f" mean sunlit {stats['mean']:.2f} h"
            f" over {grid.grid.nx}×{grid.grid.ny} cells"
        )


def scene_snapshot_summary(scene: Scene) -> str:
    """Byte-stable plain-text listing of the scene in creation order."""
    lines = [f"{len(scene)} objects"]
    for obj in scene:
        bb = obj.solid.aabb()
        lo = ", ".join(f"{v:.6g}" for v in bb.lo)
        hi = ", ".join(f"{v:.6g}" for v in bb.hi)
        lines.append(
            f"{obj.id} {obj.solid.kind} {obj.state}"
            f" tris={obj.solid.mesh.triangle_count} aabb=({lo})..({hi})"
        )
    return "\n".join(lines) + "\n"


def replay(sources: Sequence[str], seed: int, spacing_mode: str = "gap") -> Session:
    """Re-run recorded batch sources on a fresh session with ``seed``.

    Raises ``RuntimeError`` if any batch fails; recorded histories only
    contain batches that succeeded, so failure means divergence.
    """
    session = Session(seed=seed, spacing_mode=spacing_mode)
    for text in sources:
        result = session.execute(text)
        if not result.ok:
            raise RuntimeError(f"replay diverged: {result.error}")
    return session


def save_session(session: Session, path: str) -> None:
    """Write seed and ordered batch sources as JSON lines (replayable)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"version": 1, "seed": session.seed, "spacing_mode": session.spacing_mode}) + "\n")
        for entry in session.history:
            fh.write(json.dumps({"source": entry.source}) + "\n")


def load_session(path: str) -> Session:
    """Rebuild a session by replaying a file written by :func:`save_session`."""
    with open(path, "r", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        sources = [json.loads(line)["source"] for line in fh if line.strip()]
    return replay(sources, header["seed"], header.get("spacing_mode", "gap"))
