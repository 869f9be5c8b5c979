# External imports
import numpy as np
import pytest

# Own imports
from common.exceptions import NoQualifyingPlayers, TooFewPlayers, ZeroTotalVariance
from estimators.models import ClassShots, PlayerShots
from evaluation.dataset import PlayerValue, players_from_frame
from evaluation.metrics import (
    discrimination,
    oracle_errors,
    prediction_mae,
    rmse_curve,
    rmse_vs_game_fraction,
    spearman_rank,
)


def _values(**values) -> dict[str, PlayerValue]:
    return {pid: PlayerValue(value, 20) for pid, value in values.items()}


def test_mae_of_perfect_predictions():
    targets = _values(a=0.3, b=0.4)

    assert prediction_mae(targets, targets) == 0.0


def test_mae_weights_players_equally():
    estimates = _values(a=0.32, b=0.36)
    targets = _values(a=0.30, b=0.40)

    assert prediction_mae(estimates, targets) == pytest.approx(0.03)


def test_mae_needs_qualifying_players():
    estimates = {"a": PlayerValue(0.3, 4)}

    with pytest.raises(NoQualifyingPlayers):
        prediction_mae(estimates, _values(a=0.3), min_attempts=5)


@pytest.mark.parametrize(
    "b, expected",
    [([1, 2, 3], 1.0), ([3, 2, 1], -1.0), ([1, 3, 2], 0.5)],
)
def test_spearman(b, expected):
    a = {"x": 1, "y": 2, "z": 3}

    assert spearman_rank(a, dict(zip("xyz", b))) == pytest.approx(expected)


def test_spearman_needs_three_common_players():
    with pytest.raises(TooFewPlayers):
        spearman_rank({"x": 1, "y": 2, "z": 3}, {"x": 1, "y": 2})


def test_discrimination_bounds():
    values = [0.30, 0.35, 0.40, 0.45]
    total = float(np.var(values, ddof=1))

    assert discrimination(values, [0.0] * 4) == 1.0
    assert discrimination(values, [total] * 4) == pytest.approx(0.0)
    assert discrimination(values, [2 * total] * 4) == 0.0


def test_discrimination_needs_spread():
    with pytest.raises(ZeroTotalVariance):
        discrimination([0.3, 0.3, 0.3], [0.01] * 3)


def test_rmse_is_zero_with_the_whole_season(toy_season):
    season = players_from_frame(toy_season)

    curve = rmse_vs_game_fraction(season, [1.0], "raw", seed=4)

    assert curve[1.0] == pytest.approx(0.0, abs=1e-12)


def test_rmse_rejects_fractions_outside_the_unit_interval(toy_season):
    with pytest.raises(ValueError):
        rmse_vs_game_fraction(players_from_frame(toy_season), [0.0])


def test_rmse_draws_are_seeded(toy_season):
    season = players_from_frame(toy_season)

    first = rmse_vs_game_fraction(season, [0.1, 0.3], "rb", seed=8)
    again = rmse_vs_game_fraction(season, [0.1, 0.3], "rb", seed=8)

    assert first == again


def test_rb_beats_raw_at_every_game_fraction(toy_season):
    fractions = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 1.0]

    curves = rmse_curve(players_from_frame(toy_season), fractions, seeds=20, jobs=2)

    for index in range(6):
        assert curves["rb"][index] < curves["raw"][index]
    assert curves["raw"][0] > curves["raw"][5]
    assert curves["shrunk_rb"][0] < curves["raw"][0]
    assert curves["raw"][6] == pytest.approx(0.0, abs=1e-12)


def test_rmse_curve_follows_the_shrinkage_weight(toy_season):
    season = players_from_frame(toy_season)

    attempts = rmse_curve(season, [0.1], ["shrunk_rb"], seeds=2)
    concentration = rmse_curve(season, [0.1], ["shrunk_rb"], seeds=2, weight="concentration")

    assert attempts["shrunk_rb"] != concentration["shrunk_rb"]


def test_spearman_ignores_monotone_transforms(rng):
    players = [f"p{i}" for i in range(30)]
    a = dict(zip(players, rng.normal(size=30)))
    b = dict(zip(players, rng.normal(size=30)))

    rho = spearman_rank(a, b)
    stretched = spearman_rank({p: np.exp(5.0 * v) for p, v in a.items()}, b)
    cubed = spearman_rank(a, {p: v**3 + 1.0 for p, v in b.items()})

    assert stretched == pytest.approx(rho, abs=1e-12)
    assert cubed == pytest.approx(rho, abs=1e-12)


def test_discrimination_grows_with_player_spread(rng):
    z = rng.normal(size=50)
    noise = [0.001] * 50

    scores = [discrimination(0.35 + spread * z, noise) for spread in (0.02, 0.04, 0.08, 0.16)]

    assert scores == sorted(scores)
    assert scores[0] < scores[-1]


def _player(pid: str, outcomes, p_make) -> PlayerShots:
    return PlayerShots(pid, {"3PT": ClassShots.build(outcomes, p_make)})


def test_oracle_errors():
    players = {"a": _player("a", [1, 0, 0, 0], [0.5, 0.3, 0.2, 0.2])}
    truth = {"a": _player("a", [1, 0, 0, 0], [0.3, 0.3, 0.3, 0.3])}

    errors = oracle_errors(players, {"a": 0.3}, truth)

    assert errors["n_players"] == 1
    assert errors["mse_raw"] == pytest.approx(0.05**2)
    assert errors["mse_rb"] == pytest.approx(0.0)
    assert errors["mse_rb_true_p"] == pytest.approx(0.0)
    assert errors["mse_shrunk_rb"] == pytest.approx((4.7 / 14 - 0.3) ** 2)


def test_oracle_without_known_players():
    with pytest.raises(NoQualifyingPlayers):
        oracle_errors({"a": _player("a", [1], [0.5])}, {"b": 0.3}, {})
