"""HTTP/JSON API for the tutoring loop.

Routes:
    POST /sessions                  create a session (client view only)
    GET  /sessions/{id}             current client view
    POST /sessions/{id}/steps       submit one step answer
    POST /sessions/{id}/finalize    close the session and get its score
    GET  /cohorts/{label}/stats     cohort statistics + improvement vs baseline
    GET  /export/marks.csv          all finalized/imported marks as CSV
    POST /admin/import-marks        ingest a marks CSV (admin token if configured)

Client payloads never contain a step's expected value before the student's
attempt; errors are JSON objects ``{"code": ..., "message": ...}``.
"""
from __future__ import annotations

from pydantic import BaseModel, Field
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from ..longdiv import MAX_DIGITS
from ..stats import MarkSample, MarksCsvError, improvement, read_marks_rows, stats_display, summarize, truncate_display, write_marks_rows
from .config import ServiceConfig
from .store import (
    SessionStore,
    SessionCompleteError,
    SessionFinalizedError,
    StaleCursorError,
    UnknownSessionError,
    _Session,
)

__all__ = ["ApiError", "create_app"]


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class ProblemSpec(BaseModel):
    count: int = Field(ge=1, le=500)
    dividend_digits: int = Field(ge=1, le=MAX_DIGITS)
    divisor_digits: int = Field(ge=1, le=MAX_DIGITS)


class ExplicitProblem(BaseModel):
    dividend: int = Field(ge=0)
    divisor: int = Field(ge=1)


class CreateSessionRequest(BaseModel):
    cohort_label: str = Field(min_length=1)
    audio_enabled: bool = False
    student_id: str | None = None
    problem_spec: ProblemSpec | None = None
    problems: list[ExplicitProblem] | None = Field(default=None, min_length=1)
    seed: int | None = Field(default=None, ge=0, lt=2**64)


class Cursor(BaseModel):
    problem_index: int = Field(ge=0)
    step_index: int = Field(ge=0)


class SubmitStepRequest(BaseModel):
    value: int
    cursor: Cursor


def _current_step_view(session: _Session) -> dict | None:
    if session.all_answered or session.finalized_at is not None:
        return None
    step = session.traces[session.problem_index].steps[session.step_index]
    return {
        "problem_index": session.problem_index,
        "step_index": session.step_index,
        "kind": step.kind,
        "working_value": step.working_value,
    }


def _score_view(session: _Session) -> dict | None:
    if session.finalized_at is None:
        return None
    return {
        "mark": session.mark,
        "steps_total": session.steps_total,
        "steps_correct_first_try": session.steps_correct_first_try,
        "duration_seconds": session.duration_seconds,
    }


def _answered_values(session: _Session) -> list[list[int]]:
    """Per problem, the values of steps already passed (post-attempt, so safe
    to share); lets a reloaded client rebuild its working."""
    values: list[list[int]] = []
    for index, trace in enumerate(session.traces):
        if index < session.problem_index:
            values.append([step.expected_value for step in trace.steps])
        elif index == session.problem_index and not session.all_answered:
            values.append([step.expected_value for step in trace.steps[: session.step_index]])
        else:
            values.append([])
    return values


def _session_view(session: _Session) -> dict:
    """Client-facing session state; expected step values stay server-side."""
    return {
        "session_id": session.session_id,
        "cohort_label": session.cohort_label,
        "audio_enabled": session.audio_enabled,
        "student_id": session.student_id,
        "state": session.state,
        "started_at": session.started_at,
        "finalized_at": session.finalized_at,
        "problems": [
            {
                "dividend": t.problem.dividend,
                "divisor": t.problem.divisor,
                "step_count": len(t.steps),
            }
            for t in session.traces
        ],
        "progress": {
            "steps_total": session.total_steps,
            "steps_answered": session.steps_answered,
        },
        "all_steps_answered": session.all_answered,
        "answered_values": _answered_values(session),
        "current": _current_step_view(session),
        "score": _score_view(session),
    }


def create_app(config: ServiceConfig | None = None, store: SessionStore | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = store or SessionStore(config.data_dir)
    app = FastAPI(title="tutorkit session service")
    app.state.config = config
    app.state.store = store

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "invalid_request", "message": str(exc.errors())},
        )

    def _store_error(exc: Exception) -> ApiError:
        if isinstance(exc, UnknownSessionError):
            return ApiError(404, "unknown_session", str(exc))
        if isinstance(exc, SessionFinalizedError):
            return ApiError(409, "session_finalized", str(exc))
        if isinstance(exc, SessionCompleteError):
            return ApiError(409, "session_complete", str(exc))
        if isinstance(exc, StaleCursorError):
            return ApiError(409, "stale_cursor", str(exc))
        return ApiError(500, "internal_error", str(exc))

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        if (body.problem_spec is None) == (body.problems is None):
            raise ApiError(422, "invalid_spec", "provide exactly one of problem_spec or problems")
        try:
            if body.problems is not None:
                session = store.create_session(
                    cohort_label=body.cohort_label,
                    audio_enabled=body.audio_enabled,
                    student_id=body.student_id,
                    problems=[(p.dividend, p.divisor) for p in body.problems],
                    seed=body.seed,
                )
            else:
                spec = body.problem_spec
                session = store.create_session(
                    cohort_label=body.cohort_label,
                    audio_enabled=body.audio_enabled,
                    student_id=body.student_id,
                    count=spec.count,
                    dividend_digits=spec.dividend_digits,
                    divisor_digits=spec.divisor_digits,
                    seed=body.seed,
                )
        except (ValueError, ZeroDivisionError) as exc:
            raise ApiError(422, "invalid_spec", str(exc)) from exc
        return _session_view(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            session = store.get_session(session_id)
        except UnknownSessionError as exc:
            raise _store_error(exc) from exc
        return _session_view(session)

    @app.post("/sessions/{session_id}/steps")
    def submit_step(session_id: str, body: SubmitStepRequest):
        try:
            result = store.submit_step(
                session_id, body.cursor.problem_index, body.cursor.step_index, body.value
            )
        except (UnknownSessionError, SessionFinalizedError, SessionCompleteError, StaleCursorError) as exc:
            raise _store_error(exc) from exc
        session = result["session"]
        return {
            "correct": result["correct"],
            "expected_value": result["expected_value"],
            "session_complete": session.all_answered,
            "cursor": (
                None
                if session.all_answered
                else {"problem_index": session.problem_index, "step_index": session.step_index}
            ),
            "current": _current_step_view(session),
            "progress": {
                "steps_total": session.total_steps,
                "steps_answered": session.steps_answered,
            },
        }

    @app.post("/sessions/{session_id}/finalize")
    def finalize_session(session_id: str):
        try:
            session = store.finalize(session_id)
        except (UnknownSessionError, SessionFinalizedError) as exc:
            raise _store_error(exc) from exc
        view = _score_view(session)
        view["session_id"] = session.session_id
        view["cohort_label"] = session.cohort_label
        view["finalized_at"] = session.finalized_at
        return view

    @app.get("/cohorts/{label}/stats")
    def cohort_stats(label: str):
        marks = store.cohort_marks(label)
        if not marks:
            known = store.cohort_labels()
            raise ApiError(
                404,
                "empty_cohort",
                f"no finalized marks for cohort {label!r}; known cohorts: {known}",
            )
        stats = summarize(MarkSample(label, tuple(marks)))
        baseline_label = config.baseline_label
        improvement_percent = None
        if label != baseline_label:
            baseline_marks = store.cohort_marks(baseline_label)
            if baseline_marks:
                baseline_stats = summarize(MarkSample(baseline_label, tuple(baseline_marks)))
                improvement_percent = improvement(stats, baseline_stats)
        display = stats_display(stats)
        display["improvement_percent"] = (
            "" if improvement_percent is None else truncate_display(improvement_percent, 1)
        )
        return {
            "label": label,
            "baseline_label": baseline_label,
            "n": stats.n,
            "mean": stats.mean,
            "variance": stats.variance,
            "stddev": stats.stddev,
            "coeff_variation": stats.coeff_variation,
            "improvement_percent": improvement_percent,
            "display": display,
        }

    @app.get("/export/marks.csv")
    def export_marks():
        text = write_marks_rows(store.export_rows())
        return PlainTextResponse(content=text, media_type="text/csv; charset=utf-8")

    @app.post("/admin/import-marks")
    async def import_marks(request: Request):
        if config.admin_token is not None:
            token = request.headers.get("x-admin-token")
            if token != config.admin_token:
                raise ApiError(401, "unauthorized", "missing or wrong admin token")
        text = (await request.body()).decode("utf-8")
        try:
            rows = read_marks_rows(text)
        except MarksCsvError as exc:
            raise ApiError(400, "invalid_marks_csv", str(exc)) from exc
        count = store.import_marks(rows)
        return {"imported": count}

    return app
