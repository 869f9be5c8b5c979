# External imports
import numpy as np
import pytest

# Own imports
from common.config import BayesCfg, ValidityCfg
from simulator.config import SimConfig
from simulator.trajectory import ShotTruth, gen_trajectory
from trajgeom.batch import measure_shots
from trajgeom.models import ShotContext, design_row
from trajgeom.validity import measure_shot


SIM = SimConfig()


def _flights(n: int, seed: int = 7):
    """Noisy simulated shots from random spots, plus the awkward cases."""
    rng = np.random.default_rng(seed)
    samples, contexts, outcomes = [], [], []
    for _ in range(n):
        heading = rng.uniform(-1.2, 1.2)
        distance = rng.uniform(8.0, 26.0)
        release = (5.25 + distance * np.cos(heading), 25.0 + distance * np.sin(heading))
        truth = ShotTruth(
            release, rng.normal(11.0, 4.0), rng.normal(0.0, 3.0), rng.uniform(30.0, 60.0)
        )
        samples.append(gen_trajectory(truth, SIM, rng))
        contexts.append(truth.context(SIM))
        outcomes.append(int(rng.random() < 0.4))

    ctx = ShotContext(release_xy=(29.25, 25.0), hoop_xy=(5.25, 25.0))
    t = np.arange(10) * 0.04
    static = np.column_stack([t, np.full(10, 20.0), np.full(10, 25.0), np.full(10, 9.0)])
    early = gen_trajectory(ShotTruth((29.25, 25.0), 11.0, 0.0, 45.0), SIM)[:5]
    for extra in (np.empty((0, 4)), static, early, samples[0][:3]):
        samples.append(extra)
        contexts.append(ctx)
        outcomes.append(1)
    return samples, contexts, outcomes


def _summary(measurement) -> tuple:
    f = measurement.factors
    values = np.nan_to_num([f.depth, f.left_right, f.entry_angle]).tolist()
    return f.valid, f.reason, f.fill_prob, values


def test_batch_matches_one_shot_at_a_time():
    samples, contexts, outcomes = _flights(60)
    cfg = ValidityCfg()

    batch = measure_shots(samples, contexts, outcomes, bayes_cfg=BayesCfg(), validity_cfg=cfg)
    single = [
        measure_shot(s, c, o, "bayes", BayesCfg(), cfg)
        for s, c, o in zip(samples, contexts, outcomes)
    ]

    assert len(batch) == len(single)
    for got, expected in zip(batch, single):
        assert got.factors.valid == expected.factors.valid
        assert got.factors.reason == expected.factors.reason
        if expected.factors.valid:
            assert got.factors.depth == pytest.approx(expected.factors.depth, abs=1e-7)
            assert got.factors.left_right == pytest.approx(expected.factors.left_right, abs=1e-7)
            assert got.factors.entry_angle == pytest.approx(expected.factors.entry_angle, abs=1e-7)
            # off-path coefficients are barely identified; compare fitted heights instead
            heights = design_row(*expected.path.origin_xy)
            assert heights @ got.fit.beta == pytest.approx(heights @ expected.fit.beta, abs=1e-7)
            assert got.fit.residual_rmse == pytest.approx(expected.fit.residual_rmse, rel=1e-7)
            assert got.fit.sigma2_scale == pytest.approx(expected.fit.sigma2_scale, rel=1e-6)
        else:
            assert got.factors.fill_prob == expected.factors.fill_prob


def test_batch_results_do_not_depend_on_threads(mocker):
    mocker.patch("trajgeom.batch.CHUNK_SHOTS", 16)
    samples, contexts, outcomes = _flights(40)

    inline = measure_shots(samples, contexts, outcomes)
    threaded = measure_shots(samples, contexts, outcomes, jobs=3)

    assert [_summary(m) for m in inline] == [_summary(m) for m in threaded]


def test_short_shots_are_excluded_in_batch():
    samples, contexts, outcomes = _flights(5)

    measured = measure_shots(
        samples, contexts, outcomes, validity_cfg=ValidityCfg(min_path_length=100.0)
    )

    assert {m.factors.reason for m in measured} == {"too_close"}


def test_ols_goes_through_the_single_shot_path():
    samples, contexts, outcomes = _flights(5)

    measured = measure_shots(samples, contexts, outcomes, method="ols", jobs=2)

    assert len(measured) == len(samples)
    assert all(m.fit is None or m.fit.method == "ols" for m in measured)


def test_batch_needs_matching_lengths(ctx):
    with pytest.raises(ValueError):
        measure_shots([np.empty((0, 4))], [ctx, ctx], [1])
