"""HTTP service: sessions, SSE message streams, traces, workspace files."""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, Response, StreamingResponse

from ..react import Answered, BackendError, run_supervisor
from ..tooling import LogicalClock
from .config import Runtime, ServiceConfig, build_runtime
from .state import CLOSED, IDLE, RUNNING, EventStream, Session, SessionStore

logger = logging.getLogger(__name__)


def _session_payload(session: Session) -> dict:
    return {
        "id": session.id,
        "created_at": session.created_at,
        "status": session.status,
        "messages": len(session.messages),
    }


def create_app(config: ServiceConfig, runtime: Runtime | None = None) -> FastAPI:
    runtime = runtime or build_runtime(config)
    store = SessionStore(config.workspace_root)
    app = FastAPI(title="matagent chat service")
    app.state.store = store
    app.state.runtime = runtime

    def require_session(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.get("/health")
    def health():
        return {"status": "ok", "backend": runtime.config.backend.kind}

    @app.post("/api/sessions", status_code=201)
    def create_session():
        try:
            session = store.create()
        except OSError as exc:
            raise HTTPException(status_code=500, detail=f"workspace unavailable: {exc}")
        return _session_payload(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_payload(require_session(session_id))

    @app.delete("/api/sessions/{session_id}")
    def close_session(session_id: str):
        session = require_session(session_id)
        store.close(session_id)
        return _session_payload(session)

    @app.post("/api/sessions/{session_id}/messages")
    async def post_message(session_id: str, request: Request):
        session = require_session(session_id)
        try:
            body = await request.json()
        except json.JSONDecodeError:
            raise HTTPException(status_code=400, detail="body must be JSON")
        text = (body or {}).get("text", "")
        if not isinstance(text, str) or not text.strip():
            raise HTTPException(status_code=400, detail="message text must be a non-empty string")

        with session.lock:
            if session.status == CLOSED:
                raise HTTPException(status_code=409, detail="session is closed")
            if session.status == RUNNING:
                raise HTTPException(status_code=409, detail="a message is already running")
            session.status = RUNNING
            session.messages.append({"role": "user", "text": text})

        clock = LogicalClock() if runtime.deterministic else time.time
        stream = EventStream(store, session, clock)

        def worker() -> None:
            try:
                trace = run_supervisor(
                    runtime.roster.supervisor,
                    runtime.roster.assistants,
                    text,
                    backends=runtime.backends,
                    tools=runtime.dispatcher,
                    emitter=stream,
                    session=session.id,
                    clock=clock,
                    workspace=session.workspace_dir,
                    assistant_descriptions=runtime.roster.assistant_descriptions,
                )
                store.append_trace(session, trace)
                if isinstance(trace.outcome, Answered):
                    session.messages.append({"role": "agent", "text": trace.outcome.text})
                    stream.emit("final", trace.agent, {"text": trace.outcome.text})
                elif isinstance(trace.outcome, BackendError):
                    stream.emit("error", trace.agent, {"reason": "backend_error",
                                                       "detail": trace.outcome.detail})
                else:
                    stream.emit("error", trace.agent, {"reason": "step_budget_exhausted",
                                                       "steps": len(trace.steps)})
            except Exception as exc:
                logger.exception("agent run failed for session %s", session.id)
                stream.emit("error", runtime.roster.supervisor.name,
                            {"reason": "internal_error", "detail": str(exc)})
            finally:
                with session.lock:
                    session.status = IDLE
                stream.finish()

        threading.Thread(target=worker, daemon=True).start()

        def sse_body():
            for record in stream.drain():
                yield f"data: {json.dumps(record, sort_keys=True, ensure_ascii=False)}\n\n"

        return StreamingResponse(
            sse_body(),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    @app.get("/api/sessions/{session_id}/traces/{index}")
    def get_trace(session_id: str, index: int):
        session = require_session(session_id)
        user_messages = [m for m in session.messages if m["role"] == "user"]
        if index < 0 or index >= len(user_messages):
            raise HTTPException(status_code=404, detail="no such message")
        if index >= len(session.traces):
            raise HTTPException(status_code=409, detail="message is still running")
        return JSONResponse(session.traces[index])

    @app.get("/api/sessions/{session_id}/files/{name:path}")
    def get_workspace_file(session_id: str, name: str):
        session = require_session(session_id)
        root = session.workspace_dir.resolve()
        if not name or name != name.strip() or "\x00" in name:
            raise HTTPException(status_code=403, detail="invalid filename")
        candidate = Path(name)
        if candidate.is_absolute() or ".." in candidate.parts:
            raise HTTPException(status_code=403, detail="path escapes the workspace")
        target = (root / candidate).resolve()
        if target != root and root not in target.parents:
            raise HTTPException(status_code=403, detail="path escapes the workspace")
        if not target.is_file():
            raise HTTPException(status_code=404, detail="no such file")
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        return Response(content=target.read_bytes(), media_type=content_type)

    if config.static_dir and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
