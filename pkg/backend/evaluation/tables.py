"""
Comparison tables built from a half-season split: prediction errors of the
estimators, tuned shrinkage priors, rank stability between halves,
discrimination and estimator standard deviations.
"""

# Built-in imports
from dataclasses import asdict, dataclass, field
from typing import Mapping, Optional, Sequence

# External imports
import numpy as np

# Own imports
from common.config import EvaluationCfg, OptimizerCfg, ShrinkageCfg
from common.exceptions import EvaluationError, NoQualifyingPlayers
from common.logger import custom_logger
from estimators.fg_pct import FT_WEIGHT, Weight, shrunk_true_shooting_pct, true_shooting_pct
from estimators.models import POINTS, SHOT_CLASSES, PlayerEstimate, PlayerShots
from evaluation.dataset import (
    PlayerValue,
    SplitDataset,
    class_values,
    class_weights,
    shrunk_value,
)
from evaluation.metrics import discrimination, prediction_mae, spearman_rank


logger = custom_logger()

MAE_ROWS = ("3PT", "FT", "2PT", "TS")
MAE_COLUMNS = ("raw", "grand_mean", "rb", "shrunk_raw", "shrunk_rb")


@dataclass(frozen=True)
class MaeTable:
    values: dict[str, dict[str, float]]
    n_players: dict[str, int]
    priors: dict[str, tuple[float, float]] = field(default_factory=dict)
    shrinkage_weight: str = "attempts"
    weighting: str = "players weighted equally"

    def as_dict(self) -> dict:
        return asdict(self)


def qualifying_players(
    first: Mapping[str, PlayerValue], second: Mapping[str, PlayerValue], min_attempts: int
) -> list[str]:
    return [
        pid
        for pid in sorted(set(first) & set(second))
        if first[pid].n >= min_attempts and second[pid].n >= min_attempts
    ]


def tune_shrinkage(
    first: Mapping[str, PlayerShots],
    second: Mapping[str, PlayerShots],
    prior_mean: float,
    alpha0_grid: Sequence[float],
    shot_class: str = "3PT",
    min_attempts: int = 10,
    weights: Optional[Mapping[str, float]] = None,
) -> tuple[float, float]:
    """
    alpha0 from the grid whose shrunk-RB first-half estimates best predict the
    second-half raw percentages (lowest MAE, first grid point on ties), with
    beta0 = alpha0 (1 - m) / m holding the prior mean m. alpha0 = 0 stands for
    no shrinkage at all and yields the prior (0, 0).
    :param weights (Optional(Mapping)): per-player shrinkage weights of the
        first half; attempts when omitted.
    :return (tuple): (alpha0, beta0)
    """
    if not alpha0_grid:
        raise ValueError("alpha0_grid must not be empty")
    if any(alpha0 < 0 for alpha0 in alpha0_grid):
        raise ValueError("alpha0_grid values must be >= 0")
    if not 0.0 < prior_mean < 1.0:
        raise ValueError("prior_mean must lie in (0, 1)")

    targets = class_values(second, shot_class, "raw")
    best = None
    for alpha0 in alpha0_grid:
        prior = (alpha0, alpha0 * (1.0 - prior_mean) / prior_mean)
        estimates = class_values(first, shot_class, "shrunk_rb", prior, weights)
        mae = prediction_mae(estimates, targets, min_attempts)
        if best is None or mae < best[0]:
            best = (mae, prior)
    logger.debug(
        {"class": shot_class, "mae": best[0], "prior": best[1]},
        message_details="tune_shrinkage",
    )
    return best[1]


def _league_ts(players: Mapping[str, PlayerShots]) -> float:
    points = attempts = 0.0
    for player in players.values():
        for shot_class in SHOT_CLASSES:
            shots = player.of(shot_class)
            points += POINTS[shot_class] * float(np.sum(shots.outcomes))
            attempts += shots.n * (FT_WEIGHT if shot_class == "FT" else 1.0)
    return points / (2.0 * attempts) if attempts else float("nan")


def _ts_values(
    players: Mapping[str, PlayerShots],
    kind: str,
    priors: Mapping[str, tuple[float, float]],
    weights: Optional[Mapping[str, Mapping[str, float]]] = None,
) -> dict[str, PlayerValue]:
    values = {}
    for pid, player in players.items():
        n = sum(player.n(c) for c in SHOT_CLASSES)
        if n == 0:
            continue
        if kind in ("raw", "rb"):
            value = true_shooting_pct(kind, player)
        else:
            shrunk = {}
            for c in SHOT_CLASSES:
                shots = player.of(c)
                if not shots.n:
                    continue
                made = shots.outcomes if kind == "shrunk_raw" else shots.p_make
                v_hat = shots.n if weights is None else weights[c][pid]
                shrunk[c] = shrunk_value(float(np.mean(made)), v_hat, priors[c])
            value = shrunk_true_shooting_pct(player, shrunk)
        values[pid] = PlayerValue(value, n)
    return values


def class_prior(
    split: SplitDataset,
    shot_class: str,
    evaluation: EvaluationCfg,
    shrinkage: ShrinkageCfg,
    weights: Optional[Mapping[str, float]] = None,
) -> tuple[float, float]:
    """
    Tuned Beta prior for one class. The prior mean is the configured one or
    the first-half league rate; falls back to the configured prior when no
    player qualifies for tuning.
    """
    mean = evaluation.prior_mean or split.league_rate(shot_class)
    if not 0.0 < mean < 1.0:
        return shrinkage.alpha0, shrinkage.beta0
    try:
        return tune_shrinkage(
            split.first,
            split.second,
            mean,
            evaluation.alpha0_grid,
            shot_class,
            evaluation.min_attempts,
            weights,
        )
    except NoQualifyingPlayers:
        return shrinkage.alpha0, shrinkage.beta0


def build_mae_table(
    split: SplitDataset,
    evaluation: Optional[EvaluationCfg] = None,
    shrinkage: Optional[ShrinkageCfg] = None,
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> MaeTable:
    """
    Mean absolute errors of first-half estimators predicting second-half raw
    percentages, rows 3PT, FT, 2PT and TS. Rows with no qualifying player hold
    NaN and a zero player count instead of failing. Shrunk columns weigh each
    player by shrinkage.weight, the same v_hat estimate_class uses.
    """
    evaluation = evaluation or EvaluationCfg()
    shrinkage = shrinkage or ShrinkageCfg()
    min_attempts = evaluation.min_attempts
    weights = {
        c: class_weights(split.first, c, shrinkage.weight, optimizer_cfg) for c in SHOT_CLASSES
    }
    priors = {c: class_prior(split, c, evaluation, shrinkage, weights[c]) for c in SHOT_CLASSES}

    values: dict[str, dict[str, float]] = {}
    counts: dict[str, int] = {}
    for row in MAE_ROWS:
        if row == "TS":
            targets = _ts_values(split.second, "raw", priors)
            league = _league_ts(split.first)
            estimates = {
                k: _ts_values(split.first, k, priors, weights)
                for k in MAE_COLUMNS
                if k != "grand_mean"
            }
        else:
            targets = class_values(split.second, row, "raw")
            league = split.league_rate(row)
            estimates = {
                k: class_values(split.first, row, k, priors[row], weights[row])
                for k in MAE_COLUMNS
                if k != "grand_mean"
            }
        estimates["grand_mean"] = {
            pid: PlayerValue(league, v.n) for pid, v in estimates["raw"].items()
        }

        counts[row] = len(qualifying_players(estimates["raw"], targets, min_attempts))
        if counts[row] == 0:
            logger.warning(f"no qualifying players for MAE row {row}")
            values[row] = {k: float("nan") for k in MAE_COLUMNS}
            continue
        values[row] = {k: prediction_mae(estimates[k], targets, min_attempts) for k in MAE_COLUMNS}
    return MaeTable(
        values=values, n_players=counts, priors=priors, shrinkage_weight=shrinkage.weight
    )


def player_errors(
    split: SplitDataset,
    shot_class: str = "3PT",
    prior: tuple[float, float] = (3.5, 6.5),
    min_attempts: int = 10,
    weight: Weight = "attempts",
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> list[dict]:
    """Per-player absolute errors of raw, RB and shrunk-RB first-half estimates."""
    targets = class_values(split.second, shot_class, "raw")
    raw = class_values(split.first, shot_class, "raw")
    rb = class_values(split.first, shot_class, "rb")
    weights = class_weights(split.first, shot_class, weight, optimizer_cfg)
    shrunk = class_values(split.first, shot_class, "shrunk_rb", prior, weights)
    return [
        {
            "player_id": pid,
            "n_first": raw[pid].n,
            "n_second": targets[pid].n,
            "target": targets[pid].value,
            "err_raw": abs(raw[pid].value - targets[pid].value),
            "err_rb": abs(rb[pid].value - targets[pid].value),
            "err_shrunk_rb": abs(shrunk[pid].value - targets[pid].value),
        }
        for pid in qualifying_players(raw, targets, min_attempts)
    ]


def rank_stability(split: SplitDataset, shot_class: str = "3PT", min_attempts: int = 10) -> dict:
    """Spearman correlation between the halves for the raw and the RB estimator."""
    result: dict = {}
    for kind in ("raw", "rb"):
        first = class_values(split.first, shot_class, kind)
        second = class_values(split.second, shot_class, kind)
        keep = qualifying_players(first, second, min_attempts)
        result["n_players"] = len(keep)
        try:
            result[kind] = spearman_rank(
                {p: first[p].value for p in keep}, {p: second[p].value for p in keep}
            )
        except EvaluationError as error:
            logger.warning(f"rank stability {shot_class}/{kind}: {error}")
            result[kind] = float("nan")
    return result


def discrimination_table(
    estimates: Sequence[PlayerEstimate], min_attempts: int = 10
) -> dict[str, dict]:
    """Discrimination of the raw and RB estimators per shot class."""
    table = {}
    for shot_class in SHOT_CLASSES:
        rows = [e for e in estimates if e.shot_class == shot_class and e.n >= min_attempts]
        entry: dict = {"n_players": len(rows)}
        for kind in ("raw", "rb"):
            try:
                entry[kind] = discrimination(
                    [getattr(e, f"theta_{kind}") for e in rows],
                    [getattr(e, f"var_{kind}") for e in rows],
                )
            except EvaluationError as error:
                logger.warning(f"discrimination {shot_class}/{kind}: {error}")
                entry[kind] = float("nan")
        table[shot_class] = entry
    return table


def sd_summary(
    estimates: Sequence[PlayerEstimate],
    simulated: Mapping[str, float],
    shot_class: str = "3PT",
) -> dict:
    """Per-player raw, RB and simulated-RB standard deviations with quartiles."""
    rows = [
        {
            "player_id": e.player_id,
            "n": e.n,
            "sd_raw": float(np.sqrt(e.var_raw)),
            "sd_rb": float(np.sqrt(e.var_rb)),
            "sd_simulated_rb": float(simulated.get(e.player_id, float("nan"))),
        }
        for e in estimates
        if e.shot_class == shot_class
    ]
    summary = {}
    for key in ("sd_raw", "sd_rb", "sd_simulated_rb"):
        column = np.array([r[key] for r in rows], dtype=float)
        column = column[np.isfinite(column)]
        if column.size == 0:
            summary[key] = None
            continue
        q25, median, q75 = np.percentile(column, [25, 50, 75])
        summary[key] = {
            "q25": float(q25),
            "median": float(median),
            "q75": float(q75),
            "mean": float(np.mean(column)),
        }
    return {"players": rows, "summary": summary}
