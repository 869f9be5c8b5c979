# External imports
import numpy as np
import pandas as pd
import pytest

# Own imports
from simulator.config import SimConfig
from simulator.season import SHOT_COLUMNS, gen_dataset, gen_league, write_season


def test_same_seed_same_league(small_sim):
    assert gen_league(small_sim) == gen_league(small_sim)


def test_concentrated_skill_prior():
    cfg = SimConfig(n_players=50, skill_alpha=3.5e6, skill_beta=6.5e6)

    thetas = [p.theta for p in gen_league(cfg)]

    assert np.allclose(thetas, 0.35, atol=1e-3)


@pytest.mark.slow
def test_league_skill_mean():
    thetas = [p.theta for p in gen_league(SimConfig(n_players=10_000))]

    assert np.mean(thetas) == pytest.approx(0.35, abs=0.005)


def test_season_bookkeeping(small_sim):
    season = gen_dataset(small_sim)
    per_player = season.shots.groupby("player_id").size()

    assert list(season.shots.columns) == SHOT_COLUMNS
    assert len(per_player) == small_sim.n_players
    assert per_player.between(*small_sim.shots_per_player).all()
    assert season.shots["shot_id"].is_unique
    assert set(season.tracking["shot_id"]) == set(season.shots["shot_id"])
    assert list(season.ground_truth["shot_id"]) == list(season.shots["shot_id"])
    assert set(season.half(1)["game_id"]).isdisjoint(season.half(2)["game_id"])


def test_points_follow_the_shot_class(small_sim):
    shots = gen_dataset(small_sim).shots

    assert (shots["points"] == shots["shot_class"].map({"3PT": 3, "2PT": 2, "FT": 1})).all()


def test_season_does_not_depend_on_threads(small_sim):
    single = gen_dataset(small_sim, jobs=1)
    threaded = gen_dataset(small_sim, jobs=4)

    pd.testing.assert_frame_equal(single.tracking, threaded.tracking)
    pd.testing.assert_frame_equal(single.shots, threaded.shots)


def test_league_make_rate_matches_player_skills():
    cfg = SimConfig(seed=4, n_players=80, shots_per_player=(150, 150), n_games=10)
    season = gen_dataset(cfg)
    true_p = season.ground_truth["true_p"].to_numpy()
    sd = np.sqrt(np.sum(true_p * (1.0 - true_p))) / true_p.size

    assert season.shots["outcome"].mean() == pytest.approx(true_p.mean(), abs=3 * sd)
    assert true_p.mean() == pytest.approx(season.players["true_theta"].mean(), abs=0.02)


def test_written_season_is_byte_identical(tmp_path, small_sim):
    first = write_season(gen_dataset(small_sim), tmp_path / "a")
    again = write_season(gen_dataset(small_sim), tmp_path / "b")

    assert set(first) == {"tracking", "shots", "ground_truth", "players"}
    for name, path in first.items():
        assert path.read_bytes() == again[name].read_bytes()
        assert path.read_text(encoding="utf-8").startswith("# format_version=1\n")
