# Built-in imports
from dataclasses import dataclass
from pathlib import Path

# External imports
import numpy as np
import pandas as pd

# Own imports
from common.helpers.csv_helper import write_csv
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from estimators.models import POINTS
from simulator.config import SimConfig
from simulator.outcome import spread_for_skill, true_make_prob
from simulator.trajectory import ShotTruth, gen_trajectory


logger = custom_logger()

THREE_POINT_DISTANCE = 23.75
TWO_POINT_RANGE = (8.0, 20.0)
FREE_THROW_DISTANCE = 15.0
SHOT_ARC_DEG = 75.0

TRACKING_COLUMNS = ["shot_id", "t", "x", "y", "z"]
SHOT_COLUMNS = [
    "shot_id",
    "player_id",
    "game_id",
    "period_half",
    "shot_class",
    "release_x",
    "release_y",
    "hoop_x",
    "hoop_y",
    "outcome",
    "points",
]


@dataclass(frozen=True)
class SimPlayer:
    player_id: str
    theta: float
    spread: float
    index: int


@dataclass(frozen=True)
class Season:
    """One synthetic season: ingestion-schema tables plus the hidden truth."""

    tracking: pd.DataFrame
    shots: pd.DataFrame
    ground_truth: pd.DataFrame
    players: pd.DataFrame

    def half(self, period_half: int) -> pd.DataFrame:
        return self.shots[self.shots["period_half"] == period_half]


def gen_league(cfg: SimConfig) -> list[SimPlayer]:
    """Player skills theta ~ Beta(skill_alpha, skill_beta) and the matching factor spreads."""
    league_seq = np.random.SeedSequence(cfg.seed).spawn(2)[0]
    rng = np.random.default_rng(league_seq)
    thetas = rng.beta(cfg.skill_alpha, cfg.skill_beta, size=cfg.n_players)
    width = len(str(cfg.n_players))
    return [
        SimPlayer(
            player_id=f"P{i + 1:0{width}d}",
            theta=float(theta),
            spread=spread_for_skill(float(theta), cfg),
            index=i,
        )
        for i, theta in enumerate(thetas)
    ]


def _release_point(shot_class: str, rng: np.random.Generator, cfg: SimConfig) -> tuple:
    hoop = np.asarray(cfg.hoop_xy, dtype=float)
    if shot_class == "FT":
        return float(hoop[0] + FREE_THROW_DISTANCE), float(hoop[1])
    if shot_class == "3PT":
        distance = THREE_POINT_DISTANCE + rng.exponential(1.0)
    else:
        distance = rng.uniform(*TWO_POINT_RANGE)
    heading = np.radians(rng.uniform(-SHOT_ARC_DEG, SHOT_ARC_DEG))
    return (
        float(hoop[0] + distance * np.cos(heading)),
        float(hoop[1] + distance * np.sin(heading)),
    )


def _player_shots(player: SimPlayer, cfg: SimConfig, seq: np.random.SeedSequence) -> dict:
    """Shots of one player, drawn from the player's own random stream."""
    draw_seq, noise_seq = seq.spawn(2)
    rng = np.random.default_rng(draw_seq)
    lo, hi = cfg.shots_per_player
    n_shots = int(rng.integers(lo, hi + 1))
    classes = list(cfg.class_mix)
    shot_classes = rng.choice(classes, size=n_shots, p=[cfg.class_mix[c] for c in classes])
    games = np.sort(rng.integers(0, cfg.n_games, size=n_shots))

    center = np.asarray(cfg.factor_center, dtype=float)
    sd = player.spread * np.asarray(cfg.factor_sd, dtype=float)
    factors = center + sd * rng.standard_normal((n_shots, 3))
    factors[:, 2] = np.clip(factors[:, 2], *cfg.angle_bounds)
    true_p = true_make_prob(cfg, factors[:, 0], factors[:, 1], factors[:, 2])
    outcomes = (rng.random(n_shots) < true_p).astype(int)
    releases = [_release_point(c, rng, cfg) for c in shot_classes]

    tracking, shots, truth = [], [], []
    for k, noise in enumerate(noise_seq.spawn(n_shots)):
        shot_id = f"{player.player_id}-{k:04d}"
        shot_truth = ShotTruth(releases[k], *map(float, factors[k]))
        samples = gen_trajectory(shot_truth, cfg, np.random.default_rng(noise))
        tracking.append((shot_id, samples))
        shot_class = str(shot_classes[k])
        shots.append(
            {
                "shot_id": shot_id,
                "player_id": player.player_id,
                "game_id": int(games[k]),
                "period_half": 1 if games[k] < cfg.n_games // 2 else 2,
                "shot_class": shot_class,
                "release_x": releases[k][0],
                "release_y": releases[k][1],
                "hoop_x": cfg.hoop_xy[0],
                "hoop_y": cfg.hoop_xy[1],
                "outcome": int(outcomes[k]),
                "points": POINTS[shot_class],
            }
        )
        truth.append(
            {
                "shot_id": shot_id,
                "true_depth": float(factors[k, 0]),
                "true_lr": float(factors[k, 1]),
                "true_angle": float(factors[k, 2]),
                "true_p": float(true_p[k]),
            }
        )
    return {"tracking": tracking, "shots": shots, "truth": truth}


def gen_dataset(cfg: SimConfig, jobs: int = 1) -> Season:
    """
    Full synthetic season. Every player draws from its own SeedSequence child
    and every shot's tracking noise from a grandchild, so the output does not
    depend on `jobs`.
    """
    players = gen_league(cfg)
    player_seqs = np.random.SeedSequence(cfg.seed).spawn(2)[1].spawn(len(players))
    logger.info(f"simulating {len(players)} players with seed {cfg.seed}")

    parts = ordered_map(
        lambda item: _player_shots(item[0], cfg, item[1]),
        list(zip(players, player_seqs)),
        jobs,
    )
    flights = [flight for part in parts for flight in part["tracking"]]
    samples = np.vstack([s for _, s in flights])
    tracking = pd.DataFrame(
        {
            "shot_id": np.repeat([shot_id for shot_id, _ in flights], [len(s) for _, s in flights]),
            "t": samples[:, 0],
            "x": samples[:, 1],
            "y": samples[:, 2],
            "z": samples[:, 3],
        },
        columns=TRACKING_COLUMNS,
    )
    shots = pd.DataFrame([row for part in parts for row in part["shots"]], columns=SHOT_COLUMNS)
    truth = pd.DataFrame([row for part in parts for row in part["truth"]])
    roster = pd.DataFrame(
        {
            "player_id": [p.player_id for p in players],
            "true_theta": [p.theta for p in players],
            "spread": [p.spread for p in players],
        }
    )
    return Season(tracking=tracking, shots=shots, ground_truth=truth, players=roster)


def write_season(season: Season, out_dir: Path) -> dict[str, Path]:
    """Writes tracking, shots, ground_truth and players CSVs into out_dir."""
    out_dir = Path(out_dir)
    tables = {
        "tracking": season.tracking,
        "shots": season.shots,
        "ground_truth": season.ground_truth,
        "players": season.players,
    }
    return {name: write_csv(df, out_dir / f"{name}.csv") for name, df in tables.items()}
