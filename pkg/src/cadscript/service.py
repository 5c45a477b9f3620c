"""HTTP JSON API over sessions.

One lock per session serializes command execution, undo, sun studies
and exports, mirroring the session's serial contract; a failed command
leaves the revision unchanged, so clients can use the revision number
to detect whether anything happened.  Exports and scene reads run
under the same lock and therefore always observe a complete batch.
"""

from __future__ import annotations

import datetime as dt
import itertools
import threading
from typing import Dict, Literal, Optional

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from . import scenedoc
from .dsl import Program, pretty_print
from .exporters import emit_rhino_macro, export_obj, export_stl
from .nl import (
    NLRequest,
    OfflineProvider,
    ProviderUnavailable,
    TranslationFailed,
    provider_from_env,
    translate,
)
from .session import ExecutionResult, Session, scene_snapshot_summary
from .solar import DERBY

_EXPORT_MEDIA_TYPES = {
    "obj": "model/obj",
    "stl": "application/octet-stream",
    "macro": "text/plain; charset=utf-8",
}


class CreateSessionRequest(BaseModel):
    seed: Optional[int] = None


class CommandRequest(BaseModel):
    text: str
    mode: Literal["dsl", "nl"] = "dsl"


class SunStudyRequest(BaseModel):
    latitude_deg: float = DERBY.latitude_deg
    longitude_deg: float = DERBY.longitude_deg
    date: Optional[str] = None  # ISO date; default June 21 of the current year
    interval_min: int = 10
    cell_size_m: float = 1.0


class _Entry:
    def __init__(self, session: Session) -> None:
        self.session = session
        self.lock = threading.Lock()


def _result_payload(result: ExecutionResult, revision: int, attempts=None) -> dict:
    payload = {
        "created": list(result.created),
        "deleted": list(result.deleted),
        "baked": list(result.baked),
        "messages": list(result.messages),
        "error": result.error,
        "revision": revision,
    }
    if attempts is not None:
        payload["attempts"] = [
            {"candidate": a.candidate, "errors": list(a.errors)} for a in attempts
        ]
    return payload


def create_app(
    default_seed: int = 0,
    spacing_mode: str = "gap",
    provider=None,
    offline: bool = False,
) -> FastAPI:
    """Build the service; ``provider`` handles nl-mode translation.

    ``offline`` forces the pattern-rule translator even when provider
    environment variables are configured.
    """
    if provider is None:
        provider = OfflineProvider() if offline else provider_from_env()

    app = FastAPI(title="cadscript")
    sessions: Dict[str, _Entry] = {}
    registry_lock = threading.Lock()
    ids = itertools.count(1)

    def entry_for(session_id: str) -> _Entry:
        with registry_lock:
            entry = sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return entry

    @app.post("/sessions", status_code=201)
    def create_session(body: Optional[CreateSessionRequest] = None) -> dict:
        seed = default_seed if body is None or body.seed is None else body.seed
        session = Session(seed=seed, spacing_mode=spacing_mode)
        with registry_lock:
            session_id = f"s{next(ids)}"
            sessions[session_id] = _Entry(session)
        return {"session_id": session_id, "seed": session.seed}

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str) -> Response:
        with registry_lock:
            if sessions.pop(session_id, None) is None:
                raise HTTPException(status_code=404, detail="unknown session")
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/commands")
    def run_command(session_id: str, body: CommandRequest) -> dict:
        entry = entry_for(session_id)
        with entry.lock:
            session = entry.session
            if body.mode == "dsl":
                result = session.execute(body.text)
                return _result_payload(result, session.revision)
            try:
                request = NLRequest(
                    body.text, context=scene_snapshot_summary(session.scene)
                )
                outcome = translate(request, provider, session.scene.to_context())
            except (TranslationFailed, ProviderUnavailable) as exc:
                failure = ExecutionResult(error=str(exc))
                return _result_payload(failure, session.revision, exc.attempts)
            program = outcome.result.program
            result = session.execute(program, source_text=pretty_print(program))
            return _result_payload(result, session.revision, outcome.attempts)

    @app.get("/sessions/{session_id}/scene")
    def get_scene(session_id: str) -> Response:
        entry = entry_for(session_id)
        with entry.lock:
            text = scenedoc.serialize(scenedoc.scene_document(entry.session))
            revision = entry.session.revision
        body = f'{{"revision":{revision},"scene":{text}}}'
        return Response(content=body, media_type="application/json")

    @app.get("/sessions/{session_id}/history")
    def get_history(session_id: str) -> dict:
        entry = entry_for(session_id)
        with entry.lock:
            session = entry.session
            return {
                "revision": session.revision,
                "entries": [
                    {
                        "source": e.source,
                        "created": list(e.result.created),
                        "deleted": list(e.result.deleted),
                        "baked": list(e.result.baked),
                        "messages": list(e.result.messages),
                    }
                    for e in session.history
                ],
            }

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str) -> dict:
        entry = entry_for(session_id)
        with entry.lock:
            result = entry.session.execute("undo")
            return _result_payload(result, entry.session.revision)

    @app.post("/sessions/{session_id}/sun-study")
    def post_sun_study(session_id: str, body: SunStudyRequest) -> dict:
        entry = entry_for(session_id)
        date = body.date or dt.date(dt.date.today().year, 6, 21).isoformat()
        command = (
            f"sunstudy lat {body.latitude_deg:g} lon {body.longitude_deg:g}"
            f" date {date} interval {body.interval_min} cell {body.cell_size_m:g}"
        )
        with entry.lock:
            session = entry.session
            result = session.execute(command)
            payload = _result_payload(result, session.revision)
            if result.ok and session.last_sun_study is not None:
                payload["insolation"] = scenedoc.insolation_payload(session.last_sun_study)
            return payload

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str, format: str, include_drafts: bool = True) -> Response:
        if format not in _EXPORT_MEDIA_TYPES:
            raise HTTPException(status_code=400, detail="format must be obj, stl or macro")
        entry = entry_for(session_id)
        with entry.lock:
            session = entry.session
            if format == "obj":
                content: bytes = export_obj(
                    session.scene, include_drafts, seed=session.seed
                )
            elif format == "stl":
                content = export_stl(session.scene, include_drafts, seed=session.seed)
            else:
                statements = tuple(
                    stmt for e in session.history for stmt in e.program.statements
                )
                content = emit_rhino_macro(Program(statements)).encode("utf-8")
        return Response(content=content, media_type=_EXPORT_MEDIA_TYPES[format])

    return app


def serve(host: str, port: int, **app_kwargs) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(**app_kwargs), host=host, port=port, log_level="info")
