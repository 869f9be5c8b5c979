# Built-in imports
from dataclasses import dataclass
from typing import Mapping, Optional

# External imports
import numpy as np
import pandas as pd

# Own imports
from common.config import OptimizerCfg
from estimators.fg_pct import Weight, shrink_estimate, shrinkage_weight
from estimators.models import ClassShots, PlayerShots


SHOT_FRAME_COLUMNS = ["player_id", "game_id", "shot_class", "outcome", "p_make", "valid"]


@dataclass(frozen=True)
class PlayerValue:
    """A per-player number together with the attempts it was computed from."""

    value: float
    n: int


def players_from_frame(df: pd.DataFrame) -> dict[str, PlayerShots]:
    """
    Groups a shot table (one row per shot, in shot order) into PlayerShots.
    Missing p_make/valid columns mean no model: p_make falls back to the outcome.
    """
    df = df.copy()
    if "p_make" not in df:
        df["p_make"] = df["outcome"].astype(float)
    if "valid" not in df:
        df["valid"] = True

    players: dict[str, dict[str, ClassShots]] = {}
    for (player_id, shot_class), group in df.groupby(["player_id", "shot_class"], sort=True):
        players.setdefault(str(player_id), {})[str(shot_class)] = ClassShots.build(
            outcomes=group["outcome"].to_numpy(int),
            p_make=group["p_make"].to_numpy(float),
            valid=group["valid"].to_numpy(bool),
            game_ids=group["game_id"].to_numpy(int),
        )
    return {pid: PlayerShots(pid, shots) for pid, shots in players.items()}


@dataclass(frozen=True)
class SplitDataset:
    """Season split into two halves with disjoint game sets."""

    first: dict[str, PlayerShots]
    second: dict[str, PlayerShots]
    first_games: tuple[int, ...] = ()
    second_games: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        overlap = set(self.first_games) & set(self.second_games)
        if overlap:
            raise ValueError(f"halves share games {sorted(overlap)[:5]}")

    @classmethod
    def from_frame(cls, df: pd.DataFrame, half_column: str = "period_half") -> "SplitDataset":
        first = df[df[half_column] == 1]
        second = df[df[half_column] == 2]
        return cls(
            first=players_from_frame(first),
            second=players_from_frame(second),
            first_games=tuple(sorted(int(g) for g in first["game_id"].unique())),
            second_games=tuple(sorted(int(g) for g in second["game_id"].unique())),
        )

    def league_rate(self, shot_class: str, half: str = "first") -> float:
        """Pooled make fraction of one class in one half."""
        players = self.first if half == "first" else self.second
        outcomes = [p.of(shot_class).outcomes for p in players.values()]
        pooled = np.concatenate(outcomes) if outcomes else np.empty(0)
        return float(np.mean(pooled)) if pooled.size else float("nan")


def shrunk_value(theta: float, v_hat: float, prior: tuple[float, float]) -> float:
    """shrink_estimate, except that a (0, 0) prior leaves theta unshrunk."""
    if prior[0] == 0 and prior[1] == 0:
        return float(theta)
    return shrink_estimate(theta, v_hat, prior)


def class_weights(
    players: Mapping[str, PlayerShots],
    shot_class: str,
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> dict[str, float]:
    """Per-player shrinkage weight v_hat of one class; see shrinkage_weight."""
    return {
        pid: shrinkage_weight(player.of(shot_class), weight, optimizer_cfg)
        for pid, player in players.items()
        if player.n(shot_class)
    }


def class_values(
    players: Mapping[str, PlayerShots],
    shot_class: str,
    kind: str = "raw",
    prior: Optional[tuple[float, float]] = None,
    weights: Optional[Mapping[str, float]] = None,
) -> dict[str, PlayerValue]:
    """
    Per-player class percentage of the given kind: raw, rb, or their shrunk
    versions (shrunk_raw, shrunk_rb) pulled toward `prior`. The shrinkage
    weight of a player is weights[player_id], or their attempts without a
    mapping. Players without attempts in the class are left out.
    """
    values = {}
    for player_id, player in players.items():
        shots = player.of(shot_class)
        if shots.n == 0:
            continue
        raw = float(np.mean(shots.outcomes))
        rb = float(np.mean(shots.p_make))
        if kind == "raw":
            value = raw
        elif kind == "rb":
            value = rb
        elif kind in ("shrunk_raw", "shrunk_rb"):
            if prior is None:
                raise ValueError(f"{kind} needs a prior")
            v_hat = shots.n if weights is None else weights[player_id]
            value = shrunk_value(raw if kind == "shrunk_raw" else rb, v_hat, prior)
        else:
            raise ValueError(f"unknown estimator kind {kind!r}")
        values[player_id] = PlayerValue(value, shots.n)
    return values
