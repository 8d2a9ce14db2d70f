"""HTTP API over the engine.

Thin request/response adapters only: validation and trigger logic live in
the owning modules. Session-scoped responses carry the session's current
event sequence number so the client can keep its ordering guarantees. The
compiled web client is served from / when a bundle directory is configured.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .engine import Engine
from .selection import UnknownSelection
from .session import SessionError


class ViewEvent(BaseModel):
    comment_id: str = Field(min_length=1)
    topic_id: str = Field(min_length=1)


class MarkEvent(BaseModel):
    comment_id: str = Field(min_length=1)
    useful: bool = True


class SnippetEvent(BaseModel):
    comment_id: str = Field(min_length=1)
    start: int = Field(ge=0)
    end: int = Field(ge=1)


class ResolveBody(BaseModel):
    action: str
    user_mind: Optional[str] = None


class ThoughtBody(BaseModel):
    text: str
    revises: Optional[str] = None


class SelectionBody(BaseModel):
    selection: Optional[str] = None


def create_app(engine: Engine, client_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="fairview", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(UnknownSelection)
    async def unknown_selection_handler(request: Request, exc: UnknownSelection):
        raise HTTPException(status_code=404, detail=str(exc))

    @app.exception_handler(SessionError)
    async def session_error_handler(request: Request, exc: SessionError):
        status = 404 if "unknown session" in str(exc) else 400
        raise HTTPException(status_code=status, detail=str(exc))

    @app.exception_handler(KeyError)
    async def key_error_handler(request: Request, exc: KeyError):
        raise HTTPException(status_code=404, detail=str(exc))

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/ready")
    def ready():
        return {
            "status": "ready",
            "corpus_size": len(engine.corpus),
            "topics": engine.index.topic_ids(),
            "loaded_from_cache": engine.loaded_from_cache,
        }

    @app.get("/api/config")
    def config():
        return engine.config.public_dict()

    @app.post("/api/sessions", status_code=201)
    def create_session():
        state = engine.create_session()
        return {"session_id": state.session_id, "seq": state.seq}

    @app.get("/api/sessions/{sid}/overview")
    def overview(sid: str, selection: Optional[str] = Query(default=None)):
        state = engine.get_session(sid)
        snap = engine.overview(sid, selection)
        return {"seq": state.seq, **snap.to_dict()}

    @app.get("/api/sessions/{sid}/progress")
    def progress(sid: str, selection: Optional[str] = Query(default=None)):
        state = engine.get_session(sid)
        return {"seq": state.seq, **engine.progress(sid, selection)}

    @app.post("/api/sessions/{sid}/selection")
    def set_selection(sid: str, body: SelectionBody):
        return engine.set_selection(sid, body.selection)

    @app.get("/api/sessions/{sid}/stream")
    def stream(
        sid: str,
        topic: str,
        cursor: int = Query(default=0, ge=0),
        page_size: int = Query(default=10, ge=1, le=100),
    ):
        return engine.stream_page(sid, topic, cursor, page_size)

    @app.post("/api/sessions/{sid}/events/view")
    def view(sid: str, body: ViewEvent):
        return engine.record_view(sid, body.comment_id, body.topic_id)

    @app.post("/api/sessions/{sid}/events/mark")
    def mark(sid: str, body: MarkEvent):
        return engine.mark_useful(sid, body.comment_id, body.useful)

    @app.post("/api/sessions/{sid}/events/snippet")
    def snippet(sid: str, body: SnippetEvent):
        return engine.save_snippet(sid, body.comment_id, body.start, body.end)

    @app.get("/api/sessions/{sid}/reminders")
    def reminders(sid: str, status: Optional[str] = Query(default=None)):
        state = engine.get_session(sid)
        items = list(state.reminders.values())
        if status:
            items = [r for r in items if r.status.value == status]
        return {"seq": state.seq, "reminders": [r.to_dict() for r in items]}

    @app.post("/api/sessions/{sid}/reminders/{rid}/resolve")
    def resolve(sid: str, rid: str, body: ResolveBody):
        return engine.resolve_reminder(sid, rid, body.action, body.user_mind)

    @app.get("/api/sessions/{sid}/board")
    def board(sid: str):
        return engine.board(sid)

    @app.post("/api/sessions/{sid}/board/thoughts")
    def add_thought(sid: str, body: ThoughtBody):
        return engine.add_thought(sid, body.text, body.revises)

    @app.get("/api/sessions/{sid}/board/export")
    def export(sid: str, format: str = Query(default="markdown")):
        try:
            doc = engine.export_board(sid, format)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        media = "text/markdown" if format == "markdown" else "application/json"
        return PlainTextResponse(doc, media_type=media)

    @app.get("/api/sessions/{sid}/comments/{comment_id}")
    def comment(sid: str, comment_id: str):
        state = engine.get_session(sid)
        return {"seq": state.seq, "comment": engine._comment_payload(comment_id)}

    if client_dir and Path(client_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(client_dir), html=True), name="client")

    return app


def start_service(config, client_dir: Optional[Path] = None):
    """Build the engine (pipeline or cache) and return the ASGI app."""
    engine = Engine.build(config)
    return create_app(engine, client_dir=client_dir), engine
