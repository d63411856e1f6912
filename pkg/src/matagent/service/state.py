"""Session registry, event sequencing, and append-only persistence."""

from __future__ import annotations

import json
import queue
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from ..react.types import ReActTrace, trace_to_dict

IDLE = "idle"
RUNNING = "running"
CLOSED = "closed"

_STREAM_END = object()


@dataclass
class Session:
    id: str
    created_at: float
    workspace_dir: Path
    status: str = IDLE
    messages: list[dict] = field(default_factory=list)
    traces: list[dict] = field(default_factory=list)
    seq: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def next_seq(self) -> int:
        value = self.seq
        self.seq += 1
        return value


class SessionStore:
    """In-memory registry persisting events and traces under the workspace."""

    def __init__(self, root: str | Path, clock=time.time):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        session_id = uuid.uuid4().hex
        workspace = self.root / session_id
        workspace.mkdir(parents=True, exist_ok=False)
        session = Session(id=session_id, created_at=self.clock(), workspace_dir=workspace)
        with self._lock:
            self._sessions[session_id] = session
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(session_id)

    def close(self, session_id: str) -> Optional[Session]:
        session = self.get(session_id)
        if session is not None:
            with session.lock:
                session.status = CLOSED
        return session

    def append_event(self, session: Session, record: dict) -> None:
        with open(session.workspace_dir / "events.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def append_trace(self, session: Session, trace: ReActTrace) -> dict:
        record = trace_to_dict(trace)
        session.traces.append(record)
        with open(session.workspace_dir / "traces.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
        return record


class EventStream:
    """Bridges the agent thread to the HTTP response generator.

    Implements the event-sink protocol; every emitted event gets the next
    per-session sequence number, is persisted, and is queued for streaming.
    """

    def __init__(self, store: SessionStore, session: Session, clock):
        self.store = store
        self.session = session
        self.clock = clock
        self.queue: "queue.Queue[Any]" = queue.Queue()
        self.records: list[dict] = []

    def emit(self, kind: str, agent: str, payload: dict) -> None:
        with self.session.lock:
            seq = self.session.next_seq()
        record = {
            "session_id": self.session.id,
            "seq": seq,
            "kind": kind,
            "agent": agent,
            "payload": payload,
            "at": self.clock(),
        }
        self.records.append(record)
        self.store.append_event(self.session, record)
        self.queue.put(record)

    def finish(self) -> None:
        self.queue.put(_STREAM_END)

    def drain(self):
        """Yield queued records until the terminal sentinel arrives."""
        while True:
            item = self.queue.get()
            if item is _STREAM_END:
                return
            yield item
