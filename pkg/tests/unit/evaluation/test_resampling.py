# External imports
import numpy as np
import pytest

# Own imports
from evaluation.resampling import ResampleShot, simulated_rb_sd
from shotprob.features import N_FEATURES, feature_matrix
from shotprob.logistic import ProbModel
from simulator.config import SimConfig
from simulator.outcome import true_coefficients
from simulator.trajectory import ShotTruth, gen_trajectory
from trajgeom.validity import measure_shot


SIM = SimConfig()


@pytest.fixture(scope="module")
def generator_model() -> ProbModel:
    """The league's true make surface, unstandardized."""
    return ProbModel(
        coef=true_coefficients(SIM),
        feature_mean=np.zeros(N_FEATURES - 1),
        feature_scale=np.ones(N_FEATURES - 1),
        train_n=0,
        converged=True,
        loglik=0.0,
    )


@pytest.fixture(scope="module")
def measured_players() -> dict[str, list[ResampleShot]]:
    rng = np.random.default_rng(77)
    players = {}
    for player in ("a", "b", "c"):
        shots = []
        for _ in range(40):
            truth = ShotTruth(
                release_xy=(5.25 + rng.uniform(18.0, 24.0), 25.0 + rng.uniform(-6.0, 6.0)),
                depth=rng.normal(11.0, 4.0),
                left_right=rng.normal(0.0, 3.0),
                entry_angle=float(np.clip(rng.normal(45.0, 5.0), 25.0, 65.0)),
            )
            ctx = truth.context(SIM)
            outcome = int(rng.random() < 0.4)
            measurement = measure_shot(gen_trajectory(truth, SIM, rng), ctx, outcome)
            shots.append(ResampleShot(measurement, ctx, outcome))
        players[player] = shots
    return players


def test_zero_covariance_reproduces_the_plain_sd(generator_model, measured_players):
    simulated = simulated_rb_sd(generator_model, measured_players, repeats=3, covariance_scale=0.0)

    for player, shots in measured_players.items():
        valid = [s.measurement.factors for s in shots if s.resamplable]
        probs = list(generator_model.predict(feature_matrix(valid)))
        probs += [float(s.outcome) for s in shots if not s.resamplable]
        expected = np.std(probs, ddof=1) / np.sqrt(len(shots))
        assert simulated[player] == pytest.approx(expected, rel=1e-9)


def test_wider_posteriors_spread_the_estimator(generator_model, measured_players):
    narrow = simulated_rb_sd(generator_model, measured_players, repeats=10, seed=1)
    wide = simulated_rb_sd(
        generator_model, measured_players, repeats=10, seed=1, covariance_scale=100.0
    )

    assert np.mean(list(wide.values())) > np.mean(list(narrow.values()))


def test_resampling_is_seeded(generator_model, measured_players):
    first = simulated_rb_sd(generator_model, measured_players, repeats=4, seed=5)
    again = simulated_rb_sd(generator_model, measured_players, repeats=4, seed=5, jobs=3)

    assert first == again


def test_resampling_needs_repeats(generator_model, measured_players):
    with pytest.raises(ValueError):
        simulated_rb_sd(generator_model, measured_players, repeats=0)
