# External imports
import numpy as np
import pandas as pd
import pytest


def season_frame(rng: np.random.Generator, n_players: int = 60, n_games: int = 40) -> pd.DataFrame:
    """
    Shot table of a toy league: per-shot probabilities drawn around each
    player's skill, games 0..n_games-1, first half the lower game numbers.
    """
    rows = []
    for index in range(n_players):
        theta = rng.beta(3.5, 6.5)
        for game in range(n_games):
            for _ in range(rng.integers(4, 9)):
                p = rng.beta(theta * 10.0, (1.0 - theta) * 10.0)
                rows.append(
                    {
                        "player_id": f"p{index:03d}",
                        "game_id": game,
                        "period_half": 1 if game < n_games // 2 else 2,
                        "shot_class": "3PT",
                        "outcome": int(rng.random() < p),
                        "p_make": p,
                        "valid": True,
                    }
                )
    return pd.DataFrame(rows)


@pytest.fixture
def toy_season(rng) -> pd.DataFrame:
    return season_frame(rng)
