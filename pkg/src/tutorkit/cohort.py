"""Seeded cohorts of single-neuron learners mapped to 0-100 achievement scores.

A cohort draws ``size`` independent learners from a :class:`ModalityConfig`,
trains each against its own stimulus, and converts convergence speed into an
achievement score: converging at iteration n scores ``100 * (1 - n / n_max)``
and never converging scores 0.

Reproducibility contract (part of the output format): randomness comes from
numpy's PCG64 generator, never the platform default. Learner ``i`` of a run
with seed ``s`` draws from ``Generator(PCG64(SeedSequence([s, i])))``, in the
order weights, input signs, desired-value noise. Because every learner owns
its own substream, cohorts may be evaluated in any order or in parallel
without changing a single byte of the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .neuron import LearnerState, Paradigm, Stimulus, TrainingOutcome, _activate_array

__all__ = [
    "RNG_ALGORITHM",
    "DEFAULT_TARGET",
    "ModalityConfig",
    "AchievementRecord",
    "CohortResult",
    "modality_presets",
    "learner_rng",
    "sample_learner",
    "achievement_from_outcome",
    "run_cohort",
    "sweep",
    "records_to_csv",
]

RNG_ALGORITHM = "PCG64"
DEFAULT_TARGET = 0.9

_SEED_LIMIT = 2**64
_OPEN_LO = math.nextafter(-1.0, 0.0)
_OPEN_HI = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class ModalityConfig:
    """One teaching-modality setup for a simulated cohort.

    ``eta`` is the learning rate the modality maps to; the remaining fields
    control the population: weights start uniform in
    [-weight_init_half_range, +weight_init_half_range], inputs are random
    sign vectors, and the desired value is 0.9 plus optional gaussian noise,
    clamped inside the open interval (-1, 1).
    """

    label: str
    eta: float
    gain: float = 1.0
    input_dim: int = 1
    weight_init_half_range: float = 2.0
    desired_noise_sd: float = 0.05
    epsilon: float = 0.05
    n_max: int = 300

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("label must be non-empty")
        if any(ch in self.label for ch in ",\r\n"):
            raise ValueError("label must not contain commas or line breaks")
        if not math.isfinite(self.eta) or not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        if not math.isfinite(self.gain) or self.gain <= 0.0:
            raise ValueError("gain must be positive")
        if int(self.input_dim) < 1:
            raise ValueError("input_dim must be at least 1")
        if not math.isfinite(self.weight_init_half_range) or self.weight_init_half_range < 0.0:
            raise ValueError("weight_init_half_range must be non-negative")
        if not math.isfinite(self.desired_noise_sd) or self.desired_noise_sd < 0.0:
            raise ValueError("desired_noise_sd must be non-negative")
        if not math.isfinite(self.epsilon) or self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if int(self.n_max) < 1:
            raise ValueError("n_max must be at least 1")
        object.__setattr__(self, "input_dim", int(self.input_dim))
        object.__setattr__(self, "n_max", int(self.n_max))


@dataclass(frozen=True)
class AchievementRecord:
    """One simulated learner's achievement score."""

    learner_index: int
    label: str
    score: float

    def __post_init__(self) -> None:
        if self.learner_index < 0:
            raise ValueError("learner_index must be non-negative")
        if not 0.0 <= self.score <= 100.0:
            raise ValueError("score must lie in [0, 100]")


@dataclass(frozen=True)
class CohortResult:
    """All achievement records of one seeded cohort run."""

    config: ModalityConfig
    seed: int
    records: tuple[AchievementRecord, ...]

    @property
    def scores(self) -> np.ndarray:
        return np.array([r.score for r in self.records])


def modality_presets() -> dict[str, ModalityConfig]:
    """Default learning-rate mapping for the three teaching modalities.

    Classroom teaching maps to the slow rate 0.1 and the visual-only tutor to
    0.5. The voice-enabled tutor has no established rate beyond being faster
    than the visual-only one; 0.8 is this toolkit's working assumption.
    """
    return {
        "classical": ModalityConfig(label="classical", eta=0.1),
        "cal-novoice": ModalityConfig(label="cal-novoice", eta=0.5),
        "cal-voice": ModalityConfig(label="cal-voice", eta=0.8),
    }


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


def learner_rng(seed: int, learner_index: int) -> np.random.Generator:
    """Deterministic per-learner substream; see the module docstring."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([_check_seed(seed), int(learner_index)]))
    )


def sample_learner(
    rng: np.random.Generator, config: ModalityConfig
) -> tuple[LearnerState, Stimulus]:
    """Draw one learner and its stimulus from the config's population."""
    h = config.weight_init_half_range
    weights = rng.uniform(-h, h, config.input_dim)
    signs = rng.integers(0, 2, config.input_dim) * 2 - 1
    desired = DEFAULT_TARGET + rng.normal(0.0, config.desired_noise_sd)
    desired = min(max(desired, _OPEN_LO), _OPEN_HI)
    learner = LearnerState(weights, learning_rate=config.eta, gain=config.gain)
    return learner, Stimulus(signs.astype(float), desired)


def _score(converged_at: int | None, n_max: int) -> float:
    if converged_at is None:
        return 0.0
    return round(100.0 * (1.0 - converged_at / n_max), 2)


def achievement_from_outcome(outcome: TrainingOutcome, n_max: int) -> float:
    """Map an episode outcome to a 0-100 score, linear in convergence time."""
    if int(n_max) < 1:
        raise ValueError("n_max must be at least 1")
    if outcome.converged_at is not None and outcome.converged_at > int(n_max):
        raise ValueError(
            f"outcome converged at {outcome.converged_at}, beyond the budget {n_max}"
        )
    return _score(outcome.converged_at, int(n_max))


def _train_batch(
    weights: np.ndarray,
    inputs: np.ndarray,
    desired: np.ndarray,
    eta: float,
    gain: float,
    epsilon: float,
    n_max: int,
    supervised: bool,
) -> np.ndarray:
    """Train a whole cohort at once; returns converged_at per learner (-1 = never).

    Step for step this reproduces :func:`tutorkit.neuron.train_episode`:
    the error is measured before any update (iteration 0 is the untrained
    state) and converged learners stop updating.
    """
    weights = weights.copy()
    count = weights.shape[0]
    converged = np.full(count, -1, dtype=np.int64)
    active = np.ones(count, dtype=bool)
    for n in range(n_max + 1):
        v = (weights * inputs).sum(axis=1)
        y = _activate_array(v, gain)
        e = desired - y
        hit = active & (np.abs(e) <= epsilon)
        converged[hit] = n
        active &= ~hit
        if n == n_max or not active.any():
            break
        drive = e if supervised else y
        weights[active] += (eta * drive[active])[:, None] * inputs[active]
    return converged


def run_cohort(
    config: ModalityConfig,
    size: int,
    seed: int,
    paradigm: Paradigm = Paradigm.SUPERVISED,
) -> CohortResult:
    """Sample, train, and score ``size`` learners; fully determined by (config, size, seed)."""
    if int(size) < 1:
        raise ValueError("size must be at least 1")
    size = int(size)
    seed = _check_seed(seed)
    if not isinstance(paradigm, Paradigm):
        raise TypeError("paradigm must be a Paradigm member")

    weight_rows = np.empty((size, config.input_dim))
    input_rows = np.empty((size, config.input_dim))
    desired_col = np.empty(size)
    for i in range(size):
        learner, stimulus = sample_learner(learner_rng(seed, i), config)
        weight_rows[i] = learner.weights
        input_rows[i] = stimulus.input
        desired_col[i] = stimulus.desired

    converged = _train_batch(
        weight_rows,
        input_rows,
        desired_col,
        config.eta,
        config.gain,
        config.epsilon,
        config.n_max,
        supervised=paradigm is Paradigm.SUPERVISED,
    )
    records = tuple(
        AchievementRecord(
            i, config.label, _score(None if converged[i] < 0 else int(converged[i]), config.n_max)
        )
        for i in range(size)
    )
    return CohortResult(config, seed, records)


def sweep(
    etas: Sequence[float],
    base_config: ModalityConfig,
    size: int,
    seed: int,
    paradigm: Paradigm = Paradigm.SUPERVISED,
) -> list[CohortResult]:
    """Run one cohort per learning rate, all else equal (same seed throughout)."""
    etas = [float(e) for e in etas]
    if not etas:
        raise ValueError("etas must be non-empty")
    for eta in etas:
        if not math.isfinite(eta) or not 0.0 < eta <= 1.0:
            raise ValueError(f"eta {eta!r} outside (0, 1]")
    results = []
    for eta in etas:
        config = replace(base_config, eta=eta, label=f"{base_config.label}-eta{eta:g}")
        results.append(run_cohort(config, size, seed, paradigm))
    return results


def records_to_csv(results: CohortResult | Iterable[CohortResult]) -> str:
    """Achievement records as CSV text: ``label,learner_index,score``, LF endings."""
    if isinstance(results, CohortResult):
        results = [results]
    lines = ["label,learner_index,score"]
    for result in results:
        for record in result.records:
            lines.append(f"{record.label},{record.learner_index},{record.score:.2f}")
    return "\n".join(lines) + "\n"
