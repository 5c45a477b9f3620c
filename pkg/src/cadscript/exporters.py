"""Scene exporters: ASCII OBJ, binary STL, Rhino command-macro text.

All exporters are deterministic: the same scene produces byte-identical
output, and every format carries the session seed in its header so an
exported file can be traced back to a replayable session.
"""

from __future__ import annotations

import numpy as np

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
    Program,
    SunStudy,
    Undo,
)
from .session import BAKED, Scene

_STL_TRIANGLE = np.dtype(
    [("normal", "<f4", 3), ("vertices", "<f4", (3, 3)), ("attr", "<u2")]
)


def _selected(scene: Scene, include_drafts: bool):
    for obj in scene:
        if include_drafts or obj.state == BAKED:
            yield obj


def _fmt9(value: float) -> str:
    return f"{value:.9g}"


def export_obj(scene: Scene, include_drafts: bool = True, *, seed: int = 0) -> bytes:
    """ASCII OBJ: one ``o`` block per object, 9-significant-digit coords."""
    lines = [f"# cadscript seed={seed}"]
    offset = 0
    for obj in _selected(scene, include_drafts):
        mesh = obj.solid.mesh
        lines.append(f"o {obj.id}")
        for x, y, z in mesh.vertices:
            lines.append(f"v {_fmt9(x)} {_fmt9(y)} {_fmt9(z)}")
        for a, b, c in mesh.triangles:
            lines.append(f"f {a + 1 + offset} {b + 1 + offset} {c + 1 + offset}")
        offset += mesh.vertices.shape[0]
    return ("\n".join(lines) + "\n").encode("ascii")


def export_stl(scene: Scene, include_drafts: bool = True, *, seed: int = 0) -> bytes:
    """Binary STL: 80-byte header, LE uint32 count, 50 bytes per triangle."""
    header = f"cadscript seed={seed}".encode("ascii")[:80].ljust(80, b"\0")
    chunks = []
    total = 0
    for obj in _selected(scene, include_drafts):
        mesh = obj.solid.mesh
        if mesh.is_empty:
            continue
        tri = mesh.vertices[mesh.triangles]  # (m, 3, 3) float64
        normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        lengths = np.linalg.norm(normals, axis=1, keepdims=True)
        np.divide(normals, lengths, out=normals, where=lengths > 0.0)
        record = np.zeros(tri.shape[0], dtype=_STL_TRIANGLE)
        record["normal"] = normals.astype(np.float32)
        record["vertices"] = tri.astype(np.float32)
        chunks.append(record.tobytes())
        total += tri.shape[0]
    count = np.array([total], dtype="<u4").tobytes()
    return header + count + b"".join(chunks)


def _join(values) -> str:
    return ",".join(_fmt9(float(v)) for v in values)


def emit_rhino_macro(program: Program) -> str:
    """One macro line per statement per the mapping table below.

    Statements with no single-command equivalent become ``;`` comment
    lines.  The output is plain text for manual paste into Rhino and is
    never executed by this system.
    """
    lines = []
    for stmt in program.statements:
        if isinstance(stmt, CreateBox):
            x, y, z = stmt.placement.point
            w, d, h = stmt.extents
            lines.append(f"_Box {_join((x, y, z))} {_join((x + w, y + d, z))} {_fmt9(h)}")
        elif isinstance(stmt, CreateSphere):
            if isinstance(stmt.placement, At):
                lines.append(f"_Sphere {_join(stmt.placement.point)} {_fmt9(stmt.radius)}")
            else:
                lines.append("; sphere on edge placement is resolved at run time")
        elif isinstance(stmt, CreateHypar):
            lines.append("; hypar not representable as a macro")
        elif isinstance(stmt, CreateGrid):
            lines.append("; grid not representable as a macro")
        elif isinstance(stmt, BooleanOp):
            command = {
                "union": "_BooleanUnion",
                "intersect": "_BooleanIntersection",
                "difference": "_BooleanDifference",
            }[stmt.kind]
            lines.append(f"_SelNone _SelName {stmt.a} _SelName {stmt.b} {command}")
        elif isinstance(stmt, Move):
            lines.append(
                f"_SelNone _SelName {stmt.target} _Move 0,0,0 {_join(stmt.delta)}"
            )
        elif isinstance(stmt, Delete):
            lines.append(f"_SelNone _SelName {stmt.target} _Delete")
        elif isinstance(stmt, Bake):
            lines.append("; bake has no macro equivalent")
        elif isinstance(stmt, SunStudy):
            lines.append("; sunstudy not representable as a macro")
        elif isinstance(stmt, Undo):
            lines.append("_Undo")
        else:
            lines.append(f"; {type(stmt).__name__} not representable as a macro")
    return "".join(line + "\n" for line in lines)
