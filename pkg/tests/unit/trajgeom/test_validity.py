# External imports
import numpy as np
import pytest

# Own imports
from common.config import BayesCfg, ValidityCfg
from simulator.config import SimConfig
from simulator.trajectory import ShotTruth, gen_trajectory
from trajgeom.models import QuadraticFit
from trajgeom.validity import measure_shot, validate_trajectory


def _fit(rmse: float) -> QuadraticFit:
    return QuadraticFit(
        beta=np.zeros(6),
        precision=np.eye(6),
        residual_rmse=rmse,
        n_samples=25,
        sigma2_shape=1.0,
        sigma2_scale=1.0,
    )


def _samples(n: int) -> np.ndarray:
    t = np.arange(n) * 0.04
    return np.column_stack([t, 20.0 - t, np.full(n, 25.0), np.full(n, 9.0)])


def test_too_few_samples_is_invalid():
    validity = validate_trajectory(_samples(7), _fit(0.1), outcome=0)

    assert not validity.valid
    assert validity.reason == "too_few_samples"
    assert validity.fill_prob == 0.0


def test_large_residual_fills_with_the_outcome():
    validity = validate_trajectory(_samples(25), _fit(1.6), outcome=1)

    assert not validity.valid
    assert validity.reason == "residual_rmse"
    assert validity.fill_prob == 1.0


def test_clean_shot_is_valid():
    assert validate_trajectory(_samples(25), _fit(0.2)).valid


def test_missing_crossing_is_invalid():
    validity = validate_trajectory(_samples(25), _fit(0.2), crossing_found=False, outcome=0)

    assert validity.reason == "no_descending_crossing"


def test_measure_shot_on_a_simulated_flight():
    sim = SimConfig()
    truth = ShotTruth((29.25, 25.0), 10.0, 1.0, 44.0)
    rng = np.random.default_rng(5)

    measurement = measure_shot(gen_trajectory(truth, sim, rng), truth.context(sim), 1)

    assert measurement.factors.valid
    assert measurement.fit.method == "bayes"
    assert measurement.factors.depth == pytest.approx(10.0, abs=8.0)
    assert measurement.factors.entry_angle == pytest.approx(44.0, abs=10.0)


def test_measure_shot_without_samples_is_filled(ctx):
    measurement = measure_shot(np.empty((0, 4)), ctx, 1, method="ols")

    assert not measurement.factors.valid
    assert measurement.factors.fill_prob == 1.0
    assert measurement.validity.reason == "too_few_samples"


def test_short_shots_can_be_excluded(ctx):
    cfg = ValidityCfg(min_path_length=30.0)

    measurement = measure_shot(np.empty((0, 4)), ctx, 0, validity_cfg=cfg)

    assert measurement.factors.reason == "too_close"
    assert measurement.factors.fill_prob == 0.0


@pytest.mark.slow
def test_bayes_depth_spread_is_smaller_than_ols():
    sim = SimConfig(noise_z=0.4)
    rng = np.random.default_rng(2)
    truth = ShotTruth((29.25, 25.0), 11.0, 0.0, 45.0)
    ctx = truth.context(sim)
    depths = {"bayes": [], "ols": []}
    for _ in range(1000):
        samples = gen_trajectory(truth, sim, rng)
        for method in depths:
            m = measure_shot(samples, ctx, 1, method=method, bayes_cfg=BayesCfg())
            if m.factors.valid:
                depths[method].append(m.factors.depth)

    assert np.std(depths["bayes"]) / np.std(depths["ols"]) < 0.9
