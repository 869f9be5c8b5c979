# Built-in imports
from pathlib import Path

# External imports
import numpy as np
import pytest

# Own imports
from common.config import EvaluationCfg, ModelCfg, PipelineConfig
from pipeline.pipeline_handler import run_pipeline
from simulator.config import SimConfig
from trajgeom.models import ShotContext


SMALL_SIM = SimConfig(seed=11, n_players=24, shots_per_player=(60, 80), n_games=12)


def _small_run(out_dir: Path) -> PipelineConfig:
    """A few dozen players, loose attempt minimums, few resampling repeats."""
    return PipelineConfig(
        out_dir=out_dir,
        seed=3,
        simulation=SMALL_SIM,
        model=ModelCfg(cv_folds=3, min_rows=20),
        evaluation=EvaluationCfg(min_attempts=3, rmse_seeds=2, sd_repeats=2),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20160101)


@pytest.fixture
def ctx() -> ShotContext:
    """Straight-on shot released 24 ft from the hoop."""
    return ShotContext(release_xy=(29.25, 25.0), hoop_xy=(5.25, 25.0))


@pytest.fixture
def small_sim() -> SimConfig:
    return SMALL_SIM


@pytest.fixture(scope="session")
def finished_run(tmp_path_factory) -> PipelineConfig:
    """Config of a complete simulated run, shared read-only across tests."""
    config = _small_run(tmp_path_factory.mktemp("finished") / "run")
    run_pipeline(config)
    return config
