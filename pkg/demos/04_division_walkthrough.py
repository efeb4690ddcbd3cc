"""Walk the long-division engine through 125 / 5, the way a student would.

The engine emits the full written procedure: divide, multiply, subtract,
bring down, repeated per dividend digit. Because the first digit (1) is
smaller than the divisor, the walk starts with a zero quotient digit; the
assembled quotient drops that leading zero.
"""
from tutorkit.longdiv import (
    DivisionProblem,
    generate_problem,
    score_attempts,
    solve_trace,
    validate_step,
)
import numpy as np

trace = solve_trace(DivisionProblem(125, 5))
print(f"125 / 5 -> quotient {trace.quotient}, remainder {trace.remainder}")
print(f"{len(trace.steps)} steps:")
for i, step in enumerate(trace.steps):
    print(f"  [{i:2d}] {step.kind:<10} working={step.working_value:<4} expected={step.expected_value}")

print()
print("a student answering every step right first try replays the trace:")
correct_first_try = 0
for cursor, step in enumerate(trace.steps):
    verdict = validate_step(trace, cursor, step.expected_value)
    correct_first_try += verdict.is_correct
print(f"  mark = {score_attempts(len(trace.steps), correct_first_try)}")

print()
print("one wrong first attempt at a single step costs one slot of 11:")
print(f"  mark = {score_attempts(len(trace.steps), correct_first_try - 1)}")

print()
print("random practice problems are seeded and reproducible:")
rng = np.random.Generator(np.random.PCG64(7))
for _ in range(3):
    problem = generate_problem(4, 2, rng)
    solved = solve_trace(problem)
    print(f"  {problem.dividend} / {problem.divisor} = {solved.quotient} r {solved.remainder}")
