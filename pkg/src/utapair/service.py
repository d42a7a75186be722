"""HTTP session service for interactive elicitation.

Sessions are suspended by replay: every time a new answer pair arrives the
engine re-runs from scratch against the collected pairs, and the first
query that outruns them becomes the pending one. Elicitation is
deterministic given the answers, so the re-run retraces the same prefix;
a mismatch means corrupted state and fails the session.

The two respondents stay anonymous: answers to the pending query are
submitted one at a time, in any order, with no identity attached.

Endpoints (all JSON; errors use {"code", "message", "context"}):
  POST /sessions                   {grid, epsilon?} -> {id, status}
  GET  /sessions/{id}/query        -> {query, phrasing, answers_received}
  POST /sessions/{id}/answers      {value} -> {status, answers_received}
  GET  /sessions/{id}/result       -> outcome payload
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .algebra import DegenerateError
from .elicitation import NoValidReferencePairError, run
from .model import Grid, format_rational, parse_rational, renormalize_01
from .oracle import AnswerPair, OracleFailure, Query, RecordingSource
from .plotdata import curve_payload, marginal_payload
from .scenario import (
    degenerate_payload,
    grid_from_payload,
    outcome_labels,
    outcome_to_payload,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, context: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.context = context or {}


class _NeedAnswer(Exception):
    """Internal control flow: the engine needs a pair we do not have yet."""

    def __init__(self, query: Query):
        self.query = query


class _StepSource:
    """Replays collected pairs; raises once the engine asks past them."""

    def __init__(self, grid: Grid, steps: list[tuple[Query, AnswerPair]]):
        self._grid = grid
        self._steps = steps
        self._cursor = 0

    @property
    def grid(self) -> Grid:
        return self._grid

    def answer(self, query: Query) -> AnswerPair:
        if self._cursor >= len(self._steps):
            raise _NeedAnswer(query)
        expected, pair = self._steps[self._cursor]
        if expected != query:
            raise OracleFailure("session state diverged from recorded queries")
        self._cursor += 1
        return pair


@dataclass
class _Session:
    grid: Grid
    eps: Fraction
    lock: threading.Lock = field(default_factory=threading.Lock)
    steps: list[tuple[Query, AnswerPair]] = field(default_factory=list)
    partial: list[Fraction | None] = field(default_factory=list)
    pending: Query | None = None
    status: str = "awaiting-answers"
    result: dict | None = None


def _phrase(grid: Grid, query: Query) -> str:
    name_i = grid.scale(query.i).name
    name_j = grid.scale(query.j).name
    return (
        f"Option A scores {format_rational(query.q_i)} on {name_i} and "
        f"{format_rational(query.q_j)} on {name_j}. If {name_i} drops to "
        f"{format_rational(query.p_i)}, what {name_j} score would leave you "
        f"indifferent between the two options? Answer 'none' if no value on "
        f"the scale restores indifference."
    )


def _query_payload(grid: Grid, query: Query) -> dict:
    return {
        "i": query.i,
        "j": query.j,
        "criterion_i": grid.scale(query.i).name,
        "criterion_j": grid.scale(query.j).name,
        "q_i": format_rational(query.q_i),
        "q_j": format_rational(query.q_j),
        "p_i": format_rational(query.p_i),
    }


def _result_payload(session: "_Session", outcome) -> dict:
    payload = outcome_to_payload(outcome, session.grid)
    labeled = list(zip(outcome_labels(outcome), outcome.models))
    unit_tables = []
    for label, model in labeled:
        scaled, weights = renormalize_01(model, weights_out=True)
        unit_tables.append(
            {
                "label": label,
                "slopes": {
                    scale.name: [format_rational(g) for g in per_crit]
                    for scale, per_crit in zip(scaled.grid.scales, scaled.slopes)
                },
                "weights": {name: format_rational(w) for name, w in weights.items()},
            }
        )
    payload["tables_unit"] = unit_tables
    n = session.grid.criteria_count
    payload["curves"] = [
        curve_payload(labeled, i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    payload["marginals"] = marginal_payload(labeled)["marginals"]
    return payload


def _advance(session: _Session) -> None:
    """Re-run elicitation against collected pairs; park at the next query."""
    source = RecordingSource(_StepSource(session.grid, session.steps))
    try:
        outcome = run(source, eps=session.eps)
    except _NeedAnswer as need:
        session.pending = need.query
        session.status = "awaiting-answers"
        return
    except (DegenerateError, NoValidReferencePairError, OracleFailure) as exc:
        session.pending = None
        session.status = "failed"
        session.result = degenerate_payload(session.grid, exc, source.total)
        return
    session.pending = None
    session.status = "done"
    session.result = _result_payload(session, outcome)


class _CreateBody(BaseModel):
    grid: dict
    epsilon: str | None = None


class _AnswerBody(BaseModel):
    value: str | None


def create_app() -> FastAPI:
    app = FastAPI(title="utapair session service")
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "context": exc.context},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "code": "invalid_request",
                "message": "request body failed validation",
                "context": {"errors": [str(e.get("msg", "")) for e in exc.errors()]},
            },
        )

    def _get(session_id: str) -> _Session:
        session = sessions.get(session_id)
        if session is None:
            raise ApiError(404, "not_found", f"no session {session_id!r}",
                           {"id": session_id})
        return session

    @app.post("/sessions", status_code=201)
    def create_session(body: _CreateBody) -> dict:
        try:
            grid = grid_from_payload(body.grid)
        except Exception as exc:
            raise ApiError(400, "invalid_request", f"bad grid: {exc}")
        eps = Fraction(0)
        if body.epsilon is not None:
            try:
                eps = parse_rational(body.epsilon)
            except ValueError as exc:
                raise ApiError(400, "invalid_request", f"bad epsilon: {exc}")
            if eps < 0:
                raise ApiError(400, "invalid_request", "epsilon must be non-negative")
        session = _Session(grid=grid, eps=eps)
        _advance(session)
        session_id = uuid.uuid4().hex
        with store_lock:
            sessions[session_id] = session
        return {"id": session_id, "status": session.status}

    @app.get("/sessions/{session_id}/query")
    def get_query(session_id: str) -> dict:
        session = _get(session_id)
        with session.lock:
            if session.status in ("done", "failed"):
                raise ApiError(409, "no_pending",
                               f"session is {session.status}; no query is pending",
                               {"status": session.status})
            assert session.pending is not None
            return {
                "query": _query_payload(session.grid, session.pending),
                "phrasing": _phrase(session.grid, session.pending),
                "answers_received": len(session.partial),
            }

    @app.post("/sessions/{session_id}/answers")
    def submit_answer(session_id: str, body: _AnswerBody) -> dict:
        session = _get(session_id)
        with session.lock:
            if session.status in ("done", "failed"):
                raise ApiError(409, "session_closed",
                               f"session is {session.status}; answers not accepted",
                               {"status": session.status})
            if session.pending is None:
                raise ApiError(409, "no_pending", "no query is awaiting answers")
            value: Fraction | None = None
            if body.value is not None:
                text = body.value.strip().lower()
                if text not in ("none", "off-scale"):
                    try:
                        value = parse_rational(body.value)
                    except ValueError:
                        raise ApiError(
                            400, "malformed_value",
                            f"cannot parse {body.value!r} as a rational or 'none'",
                            {"value": body.value},
                        )
            session.partial.append(value)
            if len(session.partial) == 2:
                pair = AnswerPair.of(session.partial[0], session.partial[1])
                session.steps.append((session.pending, pair))
                session.partial.clear()
                _advance(session)
            return {
                "status": session.status,
                "answers_received": len(session.partial),
            }

    @app.get("/sessions/{session_id}/result")
    def get_result(session_id: str) -> dict:
        session = _get(session_id)
        with session.lock:
            if session.result is None:
                raise ApiError(409, "not_done",
                               "session still awaiting answers",
                               {"status": session.status})
            return session.result

    return app
