"""Session state with an append-only JSONL event log.

Every mutation (session created, step submitted, session finalized, marks
imported) appends one JSON line; startup replays the log to rebuild state.
Recorded timestamps and marks are authoritative on replay, so a restarted
service reports exactly what the original one did.

All public methods serialize on one lock: per-session operations are
ordered, and cross-session reads (stats, export) see a consistent snapshot.
"""
from __future__ import annotations

import json
import secrets
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, NamedTuple

import numpy as np

from ..longdiv import (
    DivisionProblem,
    DivisionTrace,
    generate_problem,
    score_attempts,
    solve_trace,
    trace_from_dict,
    trace_to_dict,
    validate_step,
)
from ..stats import MarkRow

__all__ = [
    "StoreError",
    "UnknownSessionError",
    "SessionFinalizedError",
    "SessionCompleteError",
    "StaleCursorError",
    "Attempt",
    "SessionStore",
]

EVENTS_FILENAME = "events.jsonl"
_SEED_LIMIT = 2**64


class StoreError(Exception):
    """Base class for session-store errors."""


class UnknownSessionError(StoreError):
    pass


class SessionFinalizedError(StoreError):
    pass


class SessionCompleteError(StoreError):
    """All steps are already answered; only finalize is left."""


class StaleCursorError(StoreError):
    """A submission targeted a cursor the session has moved past."""


class Attempt(NamedTuple):
    problem_index: int
    step_index: int
    value: int
    is_correct: bool
    at: str


@dataclass
class _Session:
    session_id: str
    cohort_label: str
    audio_enabled: bool
    student_id: str
    seed: int
    traces: list[DivisionTrace]
    started_at: str
    problem_index: int = 0
    step_index: int = 0
    attempts: list[Attempt] = field(default_factory=list)
    first_results: dict[tuple[int, int], bool] = field(default_factory=dict)
    finalized_at: str | None = None
    mark: float | None = None
    steps_total: int | None = None
    steps_correct_first_try: int | None = None
    duration_seconds: float | None = None

    @property
    def state(self) -> str:
        return "active" if self.finalized_at is None else "finalized"

    @property
    def total_steps(self) -> int:
        return sum(len(t.steps) for t in self.traces)

    @property
    def all_answered(self) -> bool:
        return self.problem_index >= len(self.traces)

    @property
    def steps_answered(self) -> int:
        done = sum(len(t.steps) for t in self.traces[: self.problem_index])
        if not self.all_answered:
            done += self.step_index
        return done


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def _problem_rng(seed: int, index: int) -> np.random.Generator:
    # same substream discipline as the cohort simulator: SeedSequence([seed, index])
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


class SessionStore:
    def __init__(self, data_dir: str | Path, clock: Callable[[], datetime] = _utc_now):
        self._clock = clock
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._path = self._dir / EVENTS_FILENAME
        self._lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}
        self._imports: list[tuple[str, str, MarkRow]] = []  # (at, row_id, row)
        self._import_counter = 0
        if self._path.exists():
            self._replay()

    # -- event log -----------------------------------------------------

    def _now(self) -> str:
        stamp = self._clock()
        if stamp.tzinfo is None:
            stamp = stamp.replace(tzinfo=timezone.utc)
        return stamp.astimezone(timezone.utc).isoformat()

    def _append(self, event: dict) -> None:
        line = json.dumps(event, separators=(",", ":"), sort_keys=True)
        with open(self._path, "a", encoding="utf-8", newline="") as fh:
            fh.write(line + "\n")

    def _replay(self) -> None:
        with open(self._path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                kind = event["event"]
                if kind == "session_created":
                    data = event["session"]
                    session = _Session(
                        session_id=data["session_id"],
                        cohort_label=data["cohort_label"],
                        audio_enabled=data["audio_enabled"],
                        student_id=data["student_id"],
                        seed=data["seed"],
                        traces=[trace_from_dict(t) for t in data["traces"]],
                        started_at=data["started_at"],
                    )
                    self._sessions[session.session_id] = session
                elif kind == "step_submitted":
                    session = self._sessions[event["session_id"]]
                    self._apply_attempt(
                        session,
                        Attempt(
                            event["problem_index"],
                            event["step_index"],
                            event["value"],
                            event["correct"],
                            event["at"],
                        ),
                    )
                elif kind == "session_finalized":
                    session = self._sessions[event["session_id"]]
                    session.finalized_at = event["at"]
                    session.mark = event["mark"]
                    session.steps_total = event["steps_total"]
                    session.steps_correct_first_try = event["steps_correct_first_try"]
                    session.duration_seconds = event["duration_seconds"]
                elif kind == "marks_imported":
                    for row in event["rows"]:
                        self._import_counter += 1
                        row_id = f"import-{self._import_counter:06d}"
                        self._imports.append(
                            (
                                event["at"],
                                row_id,
                                MarkRow(row["cohort"], row["student_id"], float(row["mark"])),
                            )
                        )
                else:
                    raise ValueError(f"unknown event kind {kind!r} in {self._path}")

    @staticmethod
    def _apply_attempt(session: _Session, attempt: Attempt) -> None:
        session.attempts.append(attempt)
        key = (attempt.problem_index, attempt.step_index)
        session.first_results.setdefault(key, attempt.is_correct)
        if attempt.is_correct:
            session.step_index += 1
            if session.step_index >= len(session.traces[session.problem_index].steps):
                session.problem_index += 1
                session.step_index = 0

    # -- session lifecycle ----------------------------------------------

    def create_session(
        self,
        cohort_label: str,
        audio_enabled: bool = False,
        student_id: str | None = None,
        count: int | None = None,
        dividend_digits: int | None = None,
        divisor_digits: int | None = None,
        problems: Iterable[tuple[int, int]] | None = None,
        seed: int | None = None,
    ) -> _Session:
        """Create and persist a session; either a random problem spec or an
        explicit problem list must be given."""
        if not cohort_label or any(ch in cohort_label for ch in ",\r\n"):
            raise ValueError("cohort_label must be non-empty without commas or line breaks")
        if seed is None:
            seed = secrets.randbits(63)
        seed = int(seed)
        if not 0 <= seed < _SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")

        if problems is not None:
            problem_list = [DivisionProblem(int(a), int(b)) for a, b in problems]
            if not problem_list:
                raise ValueError("problems must be non-empty")
        else:
            if count is None or dividend_digits is None or divisor_digits is None:
                raise ValueError("problem spec requires count, dividend_digits, divisor_digits")
            if int(count) < 1:
                raise ValueError("count must be at least 1")
            problem_list = [
                generate_problem(dividend_digits, divisor_digits, _problem_rng(seed, k))
                for k in range(int(count))
            ]
        traces = [solve_trace(p) for p in problem_list]

        with self._lock:
            session = _Session(
                session_id=uuid.uuid4().hex,
                cohort_label=cohort_label,
                audio_enabled=bool(audio_enabled),
                student_id=student_id or f"s-{uuid.uuid4().hex[:8]}",
                seed=seed,
                traces=traces,
                started_at=self._now(),
            )
            self._sessions[session.session_id] = session
            self._append(
                {
                    "event": "session_created",
                    "session": {
                        "session_id": session.session_id,
                        "cohort_label": session.cohort_label,
                        "audio_enabled": session.audio_enabled,
                        "student_id": session.student_id,
                        "seed": session.seed,
                        "started_at": session.started_at,
                        "traces": [trace_to_dict(t) for t in traces],
                    },
                }
            )
            return session

    def _active_session(self, session_id: str) -> _Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        if session.finalized_at is not None:
            raise SessionFinalizedError(f"session {session_id!r} is finalized")
        return session

    def submit_step(
        self, session_id: str, problem_index: int, step_index: int, value: int
    ) -> dict:
        """Record one attempt at the step the cursor points to.

        The submission must name the cursor it answers; anything else is a
        stale or out-of-order duplicate and is rejected without side effects.
        """
        with self._lock:
            session = self._active_session(session_id)
            if session.all_answered:
                raise SessionCompleteError("all steps answered; finalize the session")
            cursor = (session.problem_index, session.step_index)
            if (int(problem_index), int(step_index)) != cursor:
                raise StaleCursorError(
                    f"submission targets {(problem_index, step_index)}, cursor is at {cursor}"
                )
            verdict = validate_step(session.traces[cursor[0]], cursor[1], value)
            attempt = Attempt(cursor[0], cursor[1], int(value), verdict.is_correct, self._now())
            self._apply_attempt(session, attempt)
            self._append(
                {
                    "event": "step_submitted",
                    "session_id": session.session_id,
                    "problem_index": attempt.problem_index,
                    "step_index": attempt.step_index,
                    "value": attempt.value,
                    "correct": attempt.is_correct,
                    "at": attempt.at,
                }
            )
            return {
                "correct": verdict.is_correct,
                "expected_value": verdict.expected_value,
                "session": session,
            }

    def finalize(self, session_id: str) -> _Session:
        """Close the session and fix its mark; unattempted steps count as misses."""
        with self._lock:
            session = self._active_session(session_id)
            total = session.total_steps
            correct_first = sum(1 for ok in session.first_results.values() if ok)
            session.steps_total = total
            session.steps_correct_first_try = correct_first
            session.mark = score_attempts(total, correct_first)
            session.finalized_at = self._now()
            started = datetime.fromisoformat(session.started_at)
            finished = datetime.fromisoformat(session.finalized_at)
            session.duration_seconds = max(0.0, (finished - started).total_seconds())
            self._append(
                {
                    "event": "session_finalized",
                    "session_id": session.session_id,
                    "at": session.finalized_at,
                    "mark": session.mark,
                    "steps_total": session.steps_total,
                    "steps_correct_first_try": session.steps_correct_first_try,
                    "duration_seconds": session.duration_seconds,
                }
            )
            return session

    def get_session(self, session_id: str) -> _Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(f"no session {session_id!r}")
            return session

    # -- marks, stats, export -------------------------------------------

    def import_marks(self, rows: Iterable[MarkRow]) -> int:
        rows = list(rows)
        with self._lock:
            at = self._now()
            for row in rows:
                self._import_counter += 1
                self._imports.append((at, f"import-{self._import_counter:06d}", row))
            self._append(
                {
                    "event": "marks_imported",
                    "at": at,
                    "rows": [
                        {"cohort": r.cohort, "student_id": r.student_id, "mark": r.mark}
                        for r in rows
                    ],
                }
            )
            return len(rows)

    def _export_entries(self) -> list[tuple[str, str, MarkRow]]:
        entries = [
            (s.finalized_at, s.session_id, MarkRow(s.cohort_label, s.student_id, s.mark))
            for s in self._sessions.values()
            if s.finalized_at is not None
        ]
        entries.extend(self._imports)
        entries.sort(key=lambda item: (item[0], item[1]))
        return entries

    def export_rows(self) -> list[MarkRow]:
        """Finalized and imported marks, ordered by (finalization time, id)."""
        with self._lock:
            return [row for _, _, row in self._export_entries()]

    def cohort_marks(self, label: str) -> list[float]:
        with self._lock:
            return [row.mark for _, _, row in self._export_entries() if row.cohort == label]

    def cohort_labels(self) -> list[str]:
        with self._lock:
            return sorted({row.cohort for _, _, row in self._export_entries()})
