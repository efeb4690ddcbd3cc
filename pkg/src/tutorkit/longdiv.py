"""Deterministic engine for written long division.

The trace walks the dividend's digits left to right, carrying a partial
dividend P, and emits the classic four-step cycle per digit:

* divide:     how many times does the divisor fit into P (one digit, 0-9)
* multiply:   that digit times the divisor
* subtract:   P minus the product
* bring_down: append the next dividend digit to the difference

The cycle repeats until the digits are exhausted (the last digit has no
bring_down). When P is smaller than the divisor the divide step still
happens and yields digit 0, so the full written procedure stays observable;
the assembled quotient drops the leading zeros.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "MAX_DIGITS",
    "DIVIDE",
    "MULTIPLY",
    "SUBTRACT",
    "BRING_DOWN",
    "DivisionProblem",
    "DivisionStep",
    "DivisionTrace",
    "StepVerdict",
    "solve_trace",
    "generate_problem",
    "validate_step",
    "score_attempts",
    "trace_to_dict",
    "trace_from_dict",
]

# 18 decimal digits keeps every value comfortably inside a signed 64-bit int.
MAX_DIGITS = 18
_MAX_VALUE = 10**MAX_DIGITS - 1

DIVIDE = "divide"
MULTIPLY = "multiply"
SUBTRACT = "subtract"
BRING_DOWN = "bring_down"
STEP_KINDS = (DIVIDE, MULTIPLY, SUBTRACT, BRING_DOWN)


class DivisionProblem(NamedTuple):
    dividend: int
    divisor: int


class DivisionStep(NamedTuple):
    kind: str
    working_value: int
    expected_value: int


class DivisionTrace(NamedTuple):
    problem: DivisionProblem
    steps: tuple[DivisionStep, ...]
    quotient: int
    remainder: int


class StepVerdict(NamedTuple):
    is_correct: bool
    expected_value: int


def _check_problem(problem: DivisionProblem) -> None:
    dividend, divisor = problem
    if divisor == 0:
        raise ZeroDivisionError("divisor must not be zero")
    if divisor < 0 or dividend < 0:
        raise ValueError("dividend and divisor must be non-negative")
    if dividend > _MAX_VALUE or divisor > _MAX_VALUE:
        raise ValueError(f"operands must have at most {MAX_DIGITS} digits")


_new = tuple.__new__  # hot path: plain tuple construction for step records


def solve_trace(problem: DivisionProblem) -> DivisionTrace:
    """Full step trace for one problem, plus quotient and remainder."""
    _check_problem(problem)
    dividend, divisor = problem
    steps: list[DivisionStep] = []
    append = steps.append
    digits = str(dividend)
    last = len(digits) - 1
    partial = ord(digits[0]) - 48
    quotient = 0
    diff = 0
    for pos in range(len(digits)):
        q = partial // divisor
        product = q * divisor
        diff = partial - product
        append(_new(DivisionStep, (DIVIDE, partial, q)))
        append(_new(DivisionStep, (MULTIPLY, q, product)))
        append(_new(DivisionStep, (SUBTRACT, partial, diff)))
        quotient = quotient * 10 + q
        if pos != last:
            partial = diff * 10 + (ord(digits[pos + 1]) - 48)
            append(_new(DivisionStep, (BRING_DOWN, diff, partial)))
    return DivisionTrace(problem, tuple(steps), quotient, diff)


def generate_problem(
    dividend_digits: int, divisor_digits: int, rng: np.random.Generator
) -> DivisionProblem:
    """Random problem with the requested digit counts, uniform per digit range.

    Requires ``dividend_digits >= divisor_digits >= 1`` (a divisor longer
    than the dividend makes no tutoring sense) and digit counts that keep
    the values inside 64-bit integers.
    """
    dividend_digits = int(dividend_digits)
    divisor_digits = int(divisor_digits)
    if not 1 <= divisor_digits <= dividend_digits <= MAX_DIGITS:
        raise ValueError(
            f"need 1 <= divisor_digits <= dividend_digits <= {MAX_DIGITS}, "
            f"got {dividend_digits} and {divisor_digits}"
        )
    dividend_lo = 0 if dividend_digits == 1 else 10 ** (dividend_digits - 1)
    dividend_hi = 10**dividend_digits - 1
    divisor_lo = 1 if divisor_digits == 1 else 10 ** (divisor_digits - 1)
    divisor_hi = 10**divisor_digits - 1
    dividend = int(rng.integers(dividend_lo, dividend_hi + 1))
    divisor = int(rng.integers(divisor_lo, divisor_hi + 1))
    return DivisionProblem(dividend, divisor)


def validate_step(trace: DivisionTrace, cursor: int, student_value: int) -> StepVerdict:
    """Check a student's answer for the step at ``cursor``.

    The expected value is always populated so callers can reveal it after a
    wrong answer. A cursor outside the trace is a session-state error.
    """
    cursor = int(cursor)
    if not 0 <= cursor < len(trace.steps):
        raise IndexError(
            f"cursor {cursor} outside the trace (0..{len(trace.steps) - 1})"
        )
    expected = trace.steps[cursor].expected_value
    return StepVerdict(int(student_value) == expected, expected)


def score_attempts(total_steps: int, first_try_correct: int) -> float:
    """Mark in [0, 100]: first-attempt hit rate, truncated to 2 decimals."""
    total_steps = int(total_steps)
    first_try_correct = int(first_try_correct)
    if total_steps < 1:
        raise ValueError("total_steps must be at least 1")
    if not 0 <= first_try_correct <= total_steps:
        raise ValueError("first_try_correct must lie in [0, total_steps]")
    # integer arithmetic so the 2-decimal truncation is exact
    return (10000 * first_try_correct // total_steps) / 100.0


def trace_to_dict(trace: DivisionTrace) -> dict:
    """Trace as the wire/JSON schema used by the service and the frontend."""
    return {
        "problem": {"dividend": trace.problem.dividend, "divisor": trace.problem.divisor},
        "steps": [
            {"kind": s.kind, "working_value": s.working_value, "expected_value": s.expected_value}
            for s in trace.steps
        ],
        "quotient": trace.quotient,
        "remainder": trace.remainder,
    }


def trace_from_dict(data: dict) -> DivisionTrace:
    problem = DivisionProblem(int(data["problem"]["dividend"]), int(data["problem"]["divisor"]))
    steps = tuple(
        DivisionStep(str(s["kind"]), int(s["working_value"]), int(s["expected_value"]))
        for s in data["steps"]
    )
    for step in steps:
        if step.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {step.kind!r}")
    trace = DivisionTrace(problem, steps, int(data["quotient"]), int(data["remainder"]))
    if trace.quotient * problem.divisor + trace.remainder != problem.dividend:
        raise ValueError("trace violates dividend = quotient * divisor + remainder")
    return trace
