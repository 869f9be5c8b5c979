# Built-in imports
from typing import Mapping, Optional, Sequence

# External imports
import numpy as np
from scipy.stats import spearmanr

# Own imports
from common.config import OptimizerCfg
from common.exceptions import (
    EmptyShots,
    NoQualifyingPlayers,
    TooFewPlayers,
    ZeroTotalVariance,
)
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from estimators.fg_pct import Weight, shrinkage_weight
from estimators.models import ClassShots, PlayerShots
from evaluation.dataset import PlayerValue, shrunk_value


logger = custom_logger()

ESTIMATOR_KINDS = ("raw", "rb", "shrunk_rb")


def prediction_mae(
    estimates: Mapping[str, PlayerValue],
    targets: Mapping[str, PlayerValue],
    min_attempts: int = 10,
) -> float:
    """
    Mean absolute error, players weighted equally, over players present in
    both mappings with at least min_attempts behind each side.
    """
    errors = [
        abs(estimates[pid].value - targets[pid].value)
        for pid in sorted(set(estimates) & set(targets))
        if estimates[pid].n >= min_attempts and targets[pid].n >= min_attempts
    ]
    if not errors:
        raise NoQualifyingPlayers(f"no player has {min_attempts}+ attempts in both halves")
    return float(np.mean(errors))


def spearman_rank(metric_a: Mapping[str, float], metric_b: Mapping[str, float]) -> float:
    """Spearman correlation over the common players, ties at average ranks."""
    common = sorted(set(metric_a) & set(metric_b))
    if len(common) < 3:
        raise TooFewPlayers(f"{len(common)} common players, need at least 3")
    a = [float(getattr(metric_a[p], "value", metric_a[p])) for p in common]
    b = [float(getattr(metric_b[p], "value", metric_b[p])) for p in common]
    rho = spearmanr(a, b).statistic
    if np.isnan(rho):
        logger.warning("spearman undefined for a constant metric")
    return float(rho)


def discrimination(values: Sequence[float], sampling_variances: Sequence[float]) -> float:
    """
    Share of between-player variance not explained by sampling noise:
    1 - mean(sampling variance) / var(values, ddof=1), clipped to [0, 1].
    """
    x = np.asarray(values, dtype=float)
    noise = np.asarray(sampling_variances, dtype=float)
    if x.size != noise.size:
        raise ValueError("values and sampling_variances must have equal lengths")
    if x.size < 3:
        raise TooFewPlayers(f"{x.size} players, need at least 3")
    total = float(np.var(x, ddof=1))
    if total <= 0:
        raise ZeroTotalVariance("metric does not vary across players")
    return float(np.clip(1.0 - float(np.mean(noise)) / total, 0.0, 1.0))


def _estimate(
    kind: str,
    shots: ClassShots,
    prior: tuple[float, float],
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> float:
    if shots.n == 0:
        raise EmptyShots("no attempts in the sampled games")
    if kind == "raw":
        return float(np.mean(shots.outcomes))
    if kind == "rb":
        return float(np.mean(shots.p_make))
    if kind == "shrunk_rb":
        v_hat = shrinkage_weight(shots, weight, optimizer_cfg)
        return shrunk_value(float(np.mean(shots.p_make)), v_hat, prior)
    raise ValueError(f"unknown estimator kind {kind!r}")


def rmse_vs_game_fraction(
    season: Mapping[str, PlayerShots],
    fractions: Sequence[float],
    kind: str = "raw",
    seed: int = 0,
    shot_class: str = "3PT",
    min_attempts: int = 10,
    prior: tuple[float, float] = (3.5, 6.5),
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> dict[float, float]:
    """
    RMSE across players of an estimator computed from a random subset of the
    season's games against the full-season raw percentage. Games are drawn
    without replacement, one draw per fraction, seeded by (seed, fraction index).
    Players with fewer than min_attempts season attempts are left out; players
    without attempts in the sampled games are skipped for that fraction.
    Shrunk estimates weigh the sampled shots by `weight`, as estimate_class does.
    """
    if any(not 0.0 < f <= 1.0 for f in fractions):
        raise ValueError("fractions must lie in (0, 1]")

    players = {
        pid: player.of(shot_class)
        for pid, player in sorted(season.items())
        if player.n(shot_class) >= max(min_attempts, 1)
    }
    if not players:
        raise NoQualifyingPlayers(f"no player has {min_attempts}+ {shot_class} attempts")
    games = np.unique(np.concatenate([shots.game_ids for shots in players.values()]))
    targets = {pid: float(np.mean(shots.outcomes)) for pid, shots in players.items()}

    curve = {}
    for index, fraction in enumerate(fractions):
        rng = np.random.default_rng([seed, index])
        n_games = max(1, int(round(fraction * games.size)))
        chosen = rng.choice(games, size=n_games, replace=False)

        squared = []
        for pid, shots in players.items():
            sampled = shots.subset(np.isin(shots.game_ids, chosen))
            if sampled.n == 0:
                continue
            estimate = _estimate(kind, sampled, prior, weight, optimizer_cfg)
            squared.append((estimate - targets[pid]) ** 2)
        curve[float(fraction)] = float(np.sqrt(np.mean(squared))) if squared else float("nan")
    return curve


def rmse_curve(
    season: Mapping[str, PlayerShots],
    fractions: Sequence[float],
    kinds: Sequence[str] = ESTIMATOR_KINDS,
    seeds: int = 20,
    base_seed: int = 0,
    shot_class: str = "3PT",
    min_attempts: int = 10,
    prior: tuple[float, float] = (3.5, 6.5),
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
    jobs: int = 1,
) -> dict[str, list[float]]:
    """Mean RMSE per estimator kind and fraction over `seeds` seeded draws."""

    def one_seed(offset: int) -> dict[str, dict[float, float]]:
        return {
            kind: rmse_vs_game_fraction(
                season,
                fractions,
                kind,
                base_seed + offset,
                shot_class,
                min_attempts,
                prior,
                weight,
                optimizer_cfg,
            )
            for kind in kinds
        }

    runs = ordered_map(one_seed, range(seeds), jobs)
    return {
        kind: [float(np.nanmean([run[kind][float(f)] for run in runs])) for f in fractions]
        for kind in kinds
    }


def oracle_errors(
    players: Mapping[str, PlayerShots],
    true_theta: Mapping[str, float],
    true_p_players: Mapping[str, PlayerShots],
    prior: tuple[float, float] = (3.5, 6.5),
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> dict:
    """
    Mean squared errors against known player skill: raw, RB with the model's
    probabilities, RB with the generator's true probabilities, and shrunk RB.
    `true_p_players` is the same shots with the true probabilities as p_make.
    """
    squared: dict[str, list[float]] = {"raw": [], "rb": [], "rb_true_p": [], "shrunk_rb": []}
    for pid in sorted(set(players) & set(true_theta) & set(true_p_players)):
        pooled = _pooled(players[pid])
        if pooled.n == 0:
            continue
        p_make = pooled.p_make
        theta = true_theta[pid]
        estimates = {
            "raw": float(np.mean(pooled.outcomes)),
            "rb": float(np.mean(p_make)),
            "rb_true_p": float(np.mean(_pooled(true_p_players[pid]).p_make)),
            "shrunk_rb": _estimate("shrunk_rb", pooled, prior, weight, optimizer_cfg),
        }
        for kind, value in estimates.items():
            squared[kind].append((value - theta) ** 2)
    if not squared["raw"]:
        raise NoQualifyingPlayers("no player with known skill has attempts")
    result = {f"mse_{kind}": float(np.mean(values)) for kind, values in squared.items()}
    result["n_players"] = len(squared["raw"])
    return result


def _pooled(player: PlayerShots) -> ClassShots:
    """All of a player's shots as one class, in class order."""
    shots = list(player.shots.values())
    if not shots:
        return ClassShots.empty()
    return ClassShots.build(
        np.concatenate([s.outcomes for s in shots]),
        np.concatenate([s.p_make for s in shots]),
        np.concatenate([s.valid for s in shots]),
    )
