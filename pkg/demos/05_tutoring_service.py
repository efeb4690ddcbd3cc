"""Drive the tutoring service end to end, in process.

A scripted student solves 125 / 5 with one deliberate mistake, the session is
finalized into a mark, the bundled classroom marks are imported alongside it,
and the cohort statistics come back over the same HTTP surface the browser
client uses. The event log lands in ./demo-session-data (JSONL, replayed on
restart).
"""
from fastapi.testclient import TestClient

from tutorkit.dataset import fixture_csv_text
from tutorkit.longdiv import DivisionProblem, solve_trace
from tutorkit.service import ServiceConfig, SessionStore, create_app

config = ServiceConfig(data_dir="demo-session-data")
store = SessionStore(config.data_dir)
app = create_app(config, store)
client = TestClient(app)

view = client.post(
    "/sessions",
    json={
        "cohort_label": "cal-voice",
        "audio_enabled": True,
        "student_id": "demo-student",
        "problems": [{"dividend": 125, "divisor": 5}],
    },
).json()
session_id = view["session_id"]
print(f"session {session_id[:8]}… created; first prompt: {view['current']}")

# one wrong first answer at the opening step, then a clean run
wrong = client.post(
    f"/sessions/{session_id}/steps",
    json={"value": 9, "cursor": {"problem_index": 0, "step_index": 0}},
).json()
print(f"wrong answer feedback: correct={wrong['correct']} expected={wrong['expected_value']}")

cursor = {"problem_index": 0, "step_index": 0}
for step in solve_trace(DivisionProblem(125, 5)).steps:
    body = client.post(
        f"/sessions/{session_id}/steps",
        json={"value": step.expected_value, "cursor": cursor},
    ).json()
    cursor = body["current"] or {}

score = client.post(f"/sessions/{session_id}/finalize").json()
print(f"final mark: {score['mark']} ({score['steps_correct_first_try']}/{score['steps_total']} first-try)")
print(f"duration: {score['duration_seconds']:.3f}s")

client.post(
    "/admin/import-marks",
    content=fixture_csv_text(),
    headers={"Content-Type": "text/csv"},
)
print()
for label in ("classical", "cal-novoice", "cal-voice"):
    stats = client.get(f"/cohorts/{label}/stats").json()
    d = stats["display"]
    improvement = d["improvement_percent"] or "-"
    print(
        f"{label:<12} n={stats['n']:>2} mean={d['mean']} stddev={d['stddev']} "
        f"improvement={improvement}"
    )

export = client.get("/export/marks.csv").text
print()
print(f"export holds {len(export.splitlines()) - 1} rows; it feeds `tutorkit analyze` unchanged")
