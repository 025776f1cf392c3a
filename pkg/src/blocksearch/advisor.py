"""Interactive experiment advisor: sessions, event log, and the HTTP API.

A session wraps one search: the service suggests the next test points, the
experimenter submits measured values as they come in, and the service
reports the shrunken interval together with the guaranteed error bound.
Sessions persist as append-only JSON-lines event logs (created, suggested,
submitted, eliminated) whose replay reconstructs the state bit-exactly, so
a crashed service never loses a lab measurement.

All numbers cross the wire twice: as exact strings (audit) and as floats
(display).  Requests to one session are serialized by a per-session lock;
reads see consistent snapshots.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from .exactnum import as_exact, format_exact
from .policies import PolicySpec, policy_from_json, policy_to_json
from .runtime import SearchState, SubmissionError, eliminate, start_search, suggest, what_if


class PointValue(BaseModel):
    point: float | str
    value: float


class CreateSessionRequest(BaseModel):
    policy: dict
    interval: tuple[float | str, float | str] = (0.0, 1.0)
    horizon: Optional[int] = None
    mode: str = "interactive"


class SubmitRequest(BaseModel):
    values: list[PointValue] = Field(default_factory=list)


def number_json(x) -> dict[str, Any]:
    return {"exact": format_exact(x), "float": float(x)}


@dataclass
class SessionRecord:
    id: str
    state: SearchState
    mode: str  # "programmatic" | "interactive"
    horizon: Optional[int]
    created_ts: float
    updated_ts: float

    def view(self) -> dict[str, Any]:
        s = self.state
        return {
            "id": self.id,
            "mode": self.mode,
            "status": s.status,
            "policy": policy_to_json(s.policy),
            "horizon": self.horizon,
            "steps_done": s.steps_done,
            "interval": {"a": number_json(s.a), "b": number_json(s.b)},
            "retained": None if s.retained is None else number_json(s.retained),
            "pending": [number_json(p) for p in s.pending],
            "bound": number_json(s.bound()),
            "history": [
                {"point": number_json(p), "value": v} for p, v in s.history
            ],
            "created_ts": self.created_ts,
            "updated_ts": self.updated_ts,
        }


class UnknownSessionError(KeyError):
    pass


class SessionStore:
    """In-memory sessions backed by per-session JSONL event logs."""

    def __init__(self, log_dir: str | Path):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, SessionRecord] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._store_lock = threading.Lock()

    # -- event log ----------------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.log_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, event: dict[str, Any]) -> None:
        event = {"ts": time.time(), **event}
        with self._log_path(session_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")

    def _log_state(self, session_id: str, state: SearchState) -> None:
        self._append(
            session_id,
            {
                "type": "eliminated",
                "interval": [format_exact(state.a), format_exact(state.b)],
                "retained": None if state.retained is None else format_exact(state.retained),
                "bound": format_exact(state.bound()),
                "steps_done": state.steps_done,
                "status": state.status,
            },
        )

    def _log_suggested(self, session_id: str, state: SearchState) -> None:
        self._append(
            session_id,
            {"type": "suggested", "points": [format_exact(p) for p in state.pending]},
        )

    # -- lifecycle ----------------------------------------------------------

    def _lock(self, session_id: str) -> threading.Lock:
        with self._store_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
            return self._locks[session_id]

    def create(
        self,
        policy: PolicySpec,
        interval=(0, 1),
        horizon: Optional[int] = None,
        mode: str = "interactive",
    ) -> SessionRecord:
        if mode not in ("interactive", "programmatic"):
            raise ValueError("mode must be 'interactive' or 'programmatic'")
        session_id = uuid.uuid4().hex
        state = start_search(policy, interval)
        now = time.time()
        record = SessionRecord(session_id, state, mode, horizon, now, now)
        self._append(
            session_id,
            {
                "type": "created",
                "policy": policy_to_json(policy),
                "interval": [format_exact(state.a), format_exact(state.b)],
                "horizon": horizon,
                "mode": mode,
            },
        )
        self._log_suggested(session_id, state)
        with self._store_lock:
            self._sessions[session_id] = record
            self._locks.setdefault(session_id, threading.Lock())
        return record

    def get(self, session_id: str) -> SessionRecord:
        with self._lock(session_id):
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSessionError(session_id)

    def submit(self, session_id: str, values: list[tuple]) -> SessionRecord:
        with self._lock(session_id):
            try:
                record = self._sessions[session_id]
            except KeyError:
                raise UnknownSessionError(session_id)
            state = eliminate(record.state, values)
            self._append(
                session_id,
                {
                    "type": "submitted",
                    "values": [
                        {"point": format_exact(p), "value": v}
                        for p, v in state.history[len(record.state.history):]
                    ],
                },
            )
            self._log_state(session_id, state)
            if record.horizon is not None and state.steps_done >= record.horizon:
                state = replace(state, status="finished")
            state = suggest(state)
            if state.pending:
                self._log_suggested(session_id, state)
            record = replace_record(record, state)
            self._sessions[session_id] = record
            return record

    def preview(self, session_id: str, cell: int):
        with self._lock(session_id):
            try:
                record = self._sessions[session_id]
            except KeyError:
                raise UnknownSessionError(session_id)
            return what_if(record.state, cell)

    def replay(self, session_id: str) -> SessionRecord:
        """Reconstruct a session from its event log (crash recovery).

        Positions are re-derived deterministically from the policy; logged
        eliminated events are cross-checked so any divergence from the
        bit-exact replay contract surfaces immediately.
        """
        path = self._log_path(session_id)
        if not path.exists():
            raise UnknownSessionError(session_id)
        record: Optional[SessionRecord] = None
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                event = json.loads(line)
                kind = event["type"]
                if kind == "created":
                    policy = policy_from_json(event["policy"])
                    interval = tuple(as_exact(s) for s in event["interval"])
                    state = start_search(policy, interval)
                    record = SessionRecord(
                        session_id, state, event["mode"], event["horizon"], event["ts"], event["ts"]
                    )
                elif kind == "submitted":
                    assert record is not None, "log corrupt: submission before creation"
                    values = [(as_exact(v["point"]), v["value"]) for v in event["values"]]
                    state = eliminate(record.state, values)
                    if record.horizon is not None and state.steps_done >= record.horizon:
                        state = replace(state, status="finished")
                    state = suggest(state)
                    record = replace_record(record, state, ts=event["ts"])
                elif kind == "eliminated":
                    assert record is not None
                    got = [format_exact(record.state.a), format_exact(record.state.b)]
                    if got != event["interval"]:
                        raise AssertionError(
                            f"replay diverged: interval {got} vs logged {event['interval']}"
                        )
        if record is None:
            raise UnknownSessionError(session_id)
        with self._store_lock:
            self._sessions[session_id] = record
            self._locks.setdefault(session_id, threading.Lock())
        return record


def replace_record(record: SessionRecord, state: SearchState, ts: Optional[float] = None) -> SessionRecord:
    return SessionRecord(
        record.id, state, record.mode, record.horizon, record.created_ts, ts or time.time()
    )


# ---------------------------------------------------------------------------
# HTTP API


def create_app(log_dir: str | Path = "sessions"):
    from fastapi import FastAPI, HTTPException, Query
    from fastapi.middleware.cors import CORSMiddleware

    store = SessionStore(log_dir)
    app = FastAPI(title="blocksearch advisor", version="0.1.0")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _parse_end(x: float | str):
        return as_exact(x)

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            policy = policy_from_json(req.policy)
            interval = (_parse_end(req.interval[0]), _parse_end(req.interval[1]))
            record = store.create(policy, interval, req.horizon, req.mode)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return record.view()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            return store.get(session_id).view()
        except UnknownSessionError:
            raise HTTPException(status_code=404, detail="unknown session")

    @app.post("/sessions/{session_id}/results")
    def submit_results(session_id: str, req: SubmitRequest):
        values = [
            (as_exact(v.point) if isinstance(v.point, str) else v.point, v.value)
            for v in req.values
        ]
        try:
            record = store.submit(session_id, values)
        except UnknownSessionError:
            raise HTTPException(status_code=404, detail="unknown session")
        except SubmissionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return record.view()

    @app.get("/sessions/{session_id}/whatif")
    def whatif(session_id: str, cell: int = Query(..., ge=0)):
        try:
            a, b, c = store.preview(session_id, cell)
        except UnknownSessionError:
            raise HTTPException(status_code=404, detail="unknown session")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "cell": cell,
            "interval": {"a": number_json(a), "b": number_json(b)},
            "retained": number_json(c),
        }

    return app
