import numpy as np
import pytest

from tutorkit.cohort import (
    AchievementRecord,
    ModalityConfig,
    achievement_from_outcome,
    learner_rng,
    modality_presets,
    records_to_csv,
    run_cohort,
    sample_learner,
    sweep,
)
from tutorkit.neuron import Paradigm, TrainingOutcome, train_episode

import oracles


def default_config(**overrides):
    base = dict(label="test", eta=0.5)
    base.update(overrides)
    return ModalityConfig(**base)


# --- sampling -----------------------------------------------------------------


def test_sample_learner_zero_half_range_gives_zero_weights():
    config = default_config(weight_init_half_range=0.0)
    for i in range(10):
        learner, _ = sample_learner(learner_rng(3, i), config)
        assert np.all(learner.weights == 0.0)


def test_sample_learner_deterministic_per_stream():
    config = default_config()
    a_learner, a_stim = sample_learner(learner_rng(42, 0), config)
    b_learner, b_stim = sample_learner(learner_rng(42, 0), config)
    assert np.array_equal(a_learner.weights, b_learner.weights)
    assert np.array_equal(a_stim.input, b_stim.input)
    assert a_stim.desired == b_stim.desired


def test_sample_learner_draw_regression():
    # frozen draws pin the RNG contract (PCG64, SeedSequence([seed, index]))
    config = default_config(eta=0.1)
    learner, stimulus = sample_learner(learner_rng(42, 0), config)
    assert learner.weights[0] == pytest.approx(1.0958241942238534, abs=0)
    assert stimulus.input[0] == 1.0
    assert stimulus.desired == pytest.approx(0.9375225597903228, abs=0)


def test_sample_learner_noiseless_desired_is_exact_target():
    config = default_config(desired_noise_sd=0.0)
    for i in range(5):
        _, stimulus = sample_learner(learner_rng(1, i), config)
        assert stimulus.desired == 0.9


def test_sample_learner_desired_stays_inside_open_interval():
    config = default_config(desired_noise_sd=5.0)  # absurd noise to force clamping
    for i in range(200):
        _, stimulus = sample_learner(learner_rng(5, i), config)
        assert -1.0 < stimulus.desired < 1.0


def test_sample_learner_inputs_are_sign_vectors():
    config = default_config(input_dim=6)
    _, stimulus = sample_learner(learner_rng(9, 4), config)
    assert set(np.unique(stimulus.input)) <= {-1.0, 1.0}


# --- achievement mapping --------------------------------------------------------


def dummy_outcome(converged_at):
    from tutorkit.neuron import LearnerState

    return TrainingOutcome(converged_at, 0.0, (0.0,), LearnerState([0.0]))


def test_achievement_examples():
    assert achievement_from_outcome(dummy_outcome(0), 300) == 100.0
    assert achievement_from_outcome(dummy_outcome(None), 300) == 0.0
    assert achievement_from_outcome(dummy_outcome(150), 300) == 50.0


def test_achievement_rounds_to_two_decimals():
    assert achievement_from_outcome(dummy_outcome(7), 300) == 97.67


def test_achievement_rejects_inconsistent_budget():
    with pytest.raises(ValueError):
        achievement_from_outcome(dummy_outcome(301), 300)


# --- run_cohort -------------------------------------------------------------------


def test_run_cohort_single_learner():
    result = run_cohort(default_config(), 1, 9)
    assert len(result.records) == 1
    assert result.records[0].learner_index == 0


def test_run_cohort_is_deterministic():
    config = default_config()
    a = run_cohort(config, 40, 1234)
    b = run_cohort(config, 40, 1234)
    assert a.records == b.records
    assert records_to_csv(a) == records_to_csv(b)


def test_run_cohort_scores_regression():
    result = run_cohort(default_config(label="x"), 6, 7)
    assert [r.score for r in result.records] == [93.33, 94.0, 94.67, 91.33, 93.0, 91.33]


def test_run_cohort_label_changes_no_numbers():
    a = run_cohort(default_config(label="one"), 30, 77)
    b = run_cohort(default_config(label="two"), 30, 77)
    assert [r.score for r in a.records] == [r.score for r in b.records]


def test_run_cohort_scores_within_range():
    result = run_cohort(default_config(eta=0.05), 100, 5)
    for record in result.records:
        assert 0.0 <= record.score <= 100.0


def test_run_cohort_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_cohort(default_config(), 0, 1)
    with pytest.raises(ValueError):
        run_cohort(default_config(), 5, -1)
    with pytest.raises(ValueError):
        run_cohort(default_config(), 5, 2**64)
    with pytest.raises(TypeError):
        run_cohort(default_config(), 5, 1, paradigm="supervised")


def test_vanishing_rate_with_unreachable_target_scores_zero():
    # frozen weights yield y = 0 forever while the target sits far outside
    # the tolerance band, so nobody converges
    config = default_config(eta=1e-300, weight_init_half_range=0.0, desired_noise_sd=0.0)
    result = run_cohort(config, 25, 3)
    assert all(record.score == 0.0 for record in result.records)


def test_run_cohort_matches_per_learner_episodes():
    # the vectorized trainer must agree with per-learner training episodes
    for config, paradigm in [
        (default_config(eta=0.3), Paradigm.SUPERVISED),
        (default_config(eta=0.5, input_dim=3, weight_init_half_range=1.0), Paradigm.SUPERVISED),
        (default_config(eta=0.4, weight_init_half_range=0.5), Paradigm.UNSUPERVISED),
    ]:
        result = run_cohort(config, 50, 2024, paradigm)
        for i, record in enumerate(result.records):
            learner, stimulus = sample_learner(learner_rng(2024, i), config)
            outcome = train_episode(
                learner,
                stimulus,
                paradigm=paradigm,
                tolerance=config.epsilon,
                max_iterations=config.n_max,
            )
            assert record.score == achievement_from_outcome(outcome, config.n_max), (
                f"learner {i} disagrees under {config.label}/{paradigm}"
            )


def test_run_cohort_matches_scalar_reference():
    config = default_config(eta=0.2)
    result = run_cohort(config, 40, 11)
    for i, record in enumerate(result.records):
        learner, stimulus = sample_learner(learner_rng(11, i), config)
        converged, _ = oracles.scalar_episode(
            learner.weights,
            stimulus.input,
            stimulus.desired,
            eta=config.eta,
            gain=config.gain,
            tolerance=config.epsilon,
            n_max=config.n_max,
        )
        expected = 0.0 if converged is None else round(100.0 * (1.0 - converged / config.n_max), 2)
        assert record.score == expected


def test_mean_ordering_over_seeds_quick():
    # acceptance runs the full 100-seed version; keep a 10-seed smoke here
    config = default_config(label="cohort", eta=0.1)
    wins = 0
    for seed in range(10):
        slow = run_cohort(ModalityConfig(label="slow", eta=0.1), 200, seed)
        fast = run_cohort(ModalityConfig(label="fast", eta=0.5), 200, seed)
        wins += fast.scores.mean() > slow.scores.mean()
    assert wins == 10


# --- sweep --------------------------------------------------------------------------


def test_sweep_single_eta_matches_run_cohort():
    base = default_config(label="cohort", eta=0.3)
    swept = sweep([0.1], base, 30, 5)[0]
    direct = run_cohort(ModalityConfig(label="direct", eta=0.1), 30, 5)
    assert [r.score for r in swept.records] == [r.score for r in direct.records]
    assert swept.config.label == "cohort-eta0.1"


def test_sweep_labels_and_count():
    results = sweep([0.1, 0.5], default_config(label="mod"), 10, 3)
    assert [r.config.label for r in results] == ["mod-eta0.1", "mod-eta0.5"]


def test_sweep_rejects_invalid_eta_before_running():
    with pytest.raises(ValueError):
        sweep([0.1, 0.0], default_config(), 10, 3)
    with pytest.raises(ValueError):
        sweep([], default_config(), 10, 3)
    with pytest.raises(ValueError):
        sweep([0.1, 1.5], default_config(), 10, 3)


def test_sweep_means_non_decreasing_regression():
    results = sweep([0.1, 0.3, 0.5], default_config(label="cohort", eta=0.1), 200, 42)
    means = [float(r.scores.mean()) for r in results]
    assert means[0] == pytest.approx(60.8087, abs=1e-4)
    assert means[1] == pytest.approx(87.13185, abs=1e-4)
    assert means[2] == pytest.approx(92.40335, abs=1e-4)
    assert means[0] <= means[1] <= means[2]


# --- presets and CSV ------------------------------------------------------------------


def test_modality_presets():
    presets = modality_presets()
    assert presets["classical"].eta == 0.1
    assert presets["cal-novoice"].eta == 0.5
    assert presets["cal-voice"].eta == 0.8
    assert presets["cal-voice"].eta > presets["cal-novoice"].eta


def test_records_to_csv_format():
    result = run_cohort(default_config(label="fmt"), 3, 8)
    text = records_to_csv(result)
    lines = text.split("\n")
    assert lines[0] == "label,learner_index,score"
    assert lines[1].startswith("fmt,0,")
    assert text.endswith("\n")
    assert "\r" not in text
    for line in lines[1:4]:
        score_text = line.split(",")[2]
        assert len(score_text.split(".")[1]) == 2


def test_config_validation():
    with pytest.raises(ValueError):
        ModalityConfig(label="", eta=0.5)
    with pytest.raises(ValueError):
        ModalityConfig(label="a,b", eta=0.5)
    with pytest.raises(ValueError):
        ModalityConfig(label="x", eta=0.0)
    with pytest.raises(ValueError):
        ModalityConfig(label="x", eta=0.5, input_dim=0)
    with pytest.raises(ValueError):
        ModalityConfig(label="x", eta=0.5, epsilon=0.0)
    with pytest.raises(ValueError):
        ModalityConfig(label="x", eta=0.5, n_max=0)
    with pytest.raises(ValueError):
        ModalityConfig(label="x", eta=0.5, weight_init_half_range=-1.0)


def test_achievement_record_validation():
    with pytest.raises(ValueError):
        AchievementRecord(-1, "x", 50.0)
    with pytest.raises(ValueError):
        AchievementRecord(0, "x", 101.0)
