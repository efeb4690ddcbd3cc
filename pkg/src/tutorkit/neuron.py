"""Single-neuron learner with a bipolar-sigmoid activation and two weight-update rules.

The model is deliberately small: one output channel, a weight vector W, a
learning rate, and an activation gain. Training repeats forward pass, error
measurement, and a weight correction. Two paradigms are supported:

* supervised: the correction is driven by the signed error between the
  desired value and the output (classic LMS/delta step),
* unsupervised: the correction is driven by the output itself (Hebbian step).

Everything here is pure value semantics: operations return new states and
never mutate their arguments, so the API is safe under unrestricted
concurrent use.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_GAIN",
    "DEFAULT_TOLERANCE",
    "DEFAULT_MAX_ITERATIONS",
    "DimensionMismatchError",
    "Paradigm",
    "LearnerState",
    "Stimulus",
    "TrainingOutcome",
    "activate",
    "forward",
    "error_signal",
    "delta_update",
    "hebbian_update",
    "train_episode",
]

DEFAULT_GAIN = 1.0
DEFAULT_TOLERANCE = 0.05
DEFAULT_MAX_ITERATIONS = 300

# largest double strictly below 1; keeps the open-interval output contract
# even where (1 - e^-x) / (1 + e^-x) rounds to 1.0 (gain * |v| beyond ~39)
_ONE_INSIDE = math.nextafter(1.0, 0.0)


class DimensionMismatchError(ValueError):
    """Input vector length does not match the learner's weight vector."""


class Paradigm(enum.Enum):
    """Which rule drives the weight correction during an episode."""

    SUPERVISED = "supervised"
    UNSUPERVISED = "unsupervised"


def _as_vector(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} components must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LearnerState:
    """Weight vector plus the two scalars that shape learning.

    ``learning_rate`` must lie in (0, 1] and ``gain`` must be positive.
    The weight array is copied and frozen, so states are immutable values.
    """

    weights: np.ndarray
    learning_rate: float = 0.1
    gain: float = DEFAULT_GAIN

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _as_vector(self.weights, "weights"))
        lr = float(self.learning_rate)
        if not math.isfinite(lr) or not 0.0 < lr <= 1.0:
            raise ValueError("learning_rate must lie in (0, 1]")
        g = float(self.gain)
        if not math.isfinite(g) or g <= 0.0:
            raise ValueError("gain must be a positive finite number")
        object.__setattr__(self, "learning_rate", lr)
        object.__setattr__(self, "gain", g)

    @property
    def dimension(self) -> int:
        return int(self.weights.size)


@dataclass(frozen=True, eq=False)
class Stimulus:
    """An input vector with components in [-1, 1] and a reachable target value.

    The activation range is the open interval (-1, 1), so the desired value
    must satisfy |desired| < 1; +-1 would be unreachable exactly.
    """

    input: np.ndarray
    desired: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "input", _as_vector(self.input, "input"))
        if np.any(np.abs(self.input) > 1.0):
            raise ValueError("input components must lie in [-1, 1]")
        d = float(self.desired)
        if not math.isfinite(d) or abs(d) >= 1.0:
            raise ValueError("desired must satisfy |desired| < 1")
        object.__setattr__(self, "desired", d)


@dataclass(frozen=True, eq=False)
class TrainingOutcome:
    """Result of one training episode.

    ``converged_at`` is the first iteration index whose absolute error fell
    inside the tolerance, or None if that never happened within the budget.
    Iteration 0 measures the untrained state, so the trajectory holds at most
    ``max_iterations + 1`` entries. ``final_state`` is the learner as it was
    when the episode stopped.
    """

    converged_at: int | None
    final_abs_error: float
    error_trajectory: tuple[float, ...]
    final_state: LearnerState


def activate(v: float, gain: float = DEFAULT_GAIN) -> float:
    """Bipolar sigmoid (1 - exp(-gain*v)) / (1 + exp(-gain*v)).

    Strictly increasing, odd, and bounded by the open interval (-1, 1).
    Evaluated through the negative half-axis so the odd symmetry
    activate(-v) == -activate(v) holds exactly, and large |v| cannot
    overflow the exponential.
    """
    v = float(v)
    gain = float(gain)
    if not math.isfinite(v) or not math.isfinite(gain) or gain <= 0.0:
        raise ValueError("activate requires finite v and gain > 0")
    t = math.exp(-gain * abs(v))
    out = (1.0 - t) / (1.0 + t)
    if out >= 1.0:
        out = _ONE_INSIDE
    return -out if v < 0.0 else out


def _activate_array(v: np.ndarray, gain: float) -> np.ndarray:
    """Vectorized twin of :func:`activate` (same formula, same symmetry trick)."""
    t = np.exp(-gain * np.abs(v))
    out = np.minimum((1.0 - t) / (1.0 + t), _ONE_INSIDE)
    return np.copysign(out, v)


def forward(learner: LearnerState, input_vector) -> tuple[float, float]:
    """Inner product of input and weights, then the activation.

    Returns ``(v, y)`` where ``v`` is the pre-activation and ``y`` the output.
    """
    x = np.asarray(input_vector, dtype=float)
    if x.shape != learner.weights.shape:
        raise DimensionMismatchError(
            f"input has length {x.size}, learner expects {learner.weights.size}"
        )
    v = float((x * learner.weights).sum())
    return v, activate(v, learner.gain)


def error_signal(desired: float, output: float) -> tuple[float, float]:
    """Signed correction term and its magnitude.

    The signed part ``desired - output`` feeds the supervised weight update;
    the magnitude ``|desired - output|`` is what convergence is judged on.
    """
    desired = float(desired)
    output = float(output)
    if not (math.isfinite(desired) and math.isfinite(output)):
        raise ValueError("error_signal requires finite inputs")
    signed = desired - output
    return signed, abs(signed)


def _updated(learner: LearnerState, x: np.ndarray, drive: float) -> LearnerState:
    if x.shape != learner.weights.shape:
        raise DimensionMismatchError(
            f"input has length {x.size}, learner expects {learner.weights.size}"
        )
    new_weights = learner.weights + (learner.learning_rate * drive) * x
    return LearnerState(new_weights, learner.learning_rate, learner.gain)


def delta_update(learner: LearnerState, input_vector, signed_error: float) -> LearnerState:
    """Supervised step: W' = W + learning_rate * signed_error * X."""
    return _updated(learner, np.asarray(input_vector, dtype=float), float(signed_error))


def hebbian_update(learner: LearnerState, input_vector, output: float) -> LearnerState:
    """Unsupervised step: W' = W + learning_rate * output * X."""
    return _updated(learner, np.asarray(input_vector, dtype=float), float(output))


def train_episode(
    learner: LearnerState,
    stimulus: Stimulus,
    paradigm: Paradigm = Paradigm.SUPERVISED,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> TrainingOutcome:
    """Run one learner against one stimulus until the error is small enough.

    Each iteration measures |desired - y| for the current weights and records
    it; iteration 0 therefore sees the untrained state. If the magnitude is
    within ``tolerance`` the episode stops with ``converged_at`` set,
    otherwise one weight update is applied (the rule picked by ``paradigm``)
    and the loop continues, for at most ``max_iterations`` updates.
    """
    if not math.isfinite(float(tolerance)) or float(tolerance) <= 0.0:
        raise ValueError("tolerance must be positive")
    if int(max_iterations) < 1:
        raise ValueError("max_iterations must be at least 1")
    if not isinstance(paradigm, Paradigm):
        raise TypeError("paradigm must be a Paradigm member")
    tolerance = float(tolerance)
    max_iterations = int(max_iterations)

    state = learner
    x = stimulus.input
    trajectory: list[float] = []
    converged_at: int | None = None
    for n in range(max_iterations + 1):
        _, y = forward(state, x)
        signed, magnitude = error_signal(stimulus.desired, y)
        trajectory.append(magnitude)
        if magnitude <= tolerance:
            converged_at = n
            break
        if n == max_iterations:
            break
        if paradigm is Paradigm.SUPERVISED:
            state = delta_update(state, x, signed)
        else:
            state = hebbian_update(state, x, y)
    return TrainingOutcome(converged_at, trajectory[-1], tuple(trajectory), state)
