"""
Per-player shooting estimators: raw and Rao-Blackwellized percentages, Beta
shrinkage toward a league prior, variances, intervals and true shooting.
"""

# Built-in imports
from typing import Literal, Optional, Sequence, Union

# External imports
import numpy as np
from scipy.stats import norm

# Own imports
from common.config import OptimizerCfg, ShrinkageCfg
from common.exceptions import DegenerateSample, EmptyShots, NoAttempts
from common.logger import custom_logger
from estimators.beta import fit_beta_mle
from estimators.models import SHOT_CLASSES, POINTS, ClassShots, PlayerEstimate, PlayerShots


logger = custom_logger()

FT_WEIGHT = 0.44

Kind = Literal["raw", "rb"]
Weight = Literal["attempts", "concentration"]


def raw_fg_pct(outcomes: Sequence[int]) -> float:
    y = np.asarray(outcomes, dtype=float)
    if y.size == 0:
        raise EmptyShots("no attempts")
    return float(np.mean(y))


def rb_fg_pct(p_makes: Sequence[float]) -> float:
    """Mean make probability; invalid shots enter with their 0/1 fill."""
    p = np.asarray(p_makes, dtype=float)
    if p.size == 0:
        raise EmptyShots("no attempts")
    return float(np.mean(p))


def shrink_estimate(
    theta_hat: float, v_hat: float, prior: tuple[float, float] = (3.5, 6.5)
) -> float:
    """(alpha0 + theta v) / (alpha0 + beta0 + v)."""
    alpha0, beta0 = prior
    if v_hat < 0:
        raise ValueError("v_hat must be >= 0")
    if alpha0 <= 0 or beta0 <= 0:
        raise ValueError("prior shapes must be > 0")
    if np.isinf(v_hat):
        return float(theta_hat)
    return float((alpha0 + theta_hat * v_hat) / (alpha0 + beta0 + v_hat))


def shrinkage_weight(
    shots: ClassShots, weight: Weight = "attempts", optimizer_cfg: Optional[OptimizerCfg] = None
) -> float:
    """
    v_hat for shrink_estimate: the attempt count, or with "concentration" the
    alpha + beta of the Beta fitted to the valid shots' probabilities. A
    degenerate probability sample falls back to the attempt count.
    """
    if weight == "attempts":
        return float(shots.n)
    if weight != "concentration":
        raise ValueError(f"unknown shrinkage weight {weight!r}")
    try:
        fit = fit_beta_mle(shots.p_make[shots.valid], optimizer_cfg)
    except DegenerateSample:
        return float(shots.n)
    return fit.alpha + fit.beta


def estimator_variance(kind: Kind, params: Union[float, tuple], n: int) -> float:
    """
    Sampling variance of a percentage estimated from n shots.
    :param params: raw -> theta; rb -> (alpha, beta) of the probability Beta.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "raw":
        theta = float(params[0] if isinstance(params, tuple) else params)
        return theta * (1.0 - theta) / n
    if kind == "rb":
        alpha, beta = params
        total = alpha + beta
        return alpha * beta / (n * total**2 * (total + 1.0))
    raise ValueError(f"unknown estimator kind {kind!r}")


def normal_ci(theta_hat: float, variance: float, level: float = 0.9) -> tuple[float, float]:
    if variance < 0:
        raise ValueError("variance must be >= 0")
    if not 0 < level < 1:
        raise ValueError("level must be in (0, 1)")
    half = norm.ppf(0.5 * (1.0 + level)) * np.sqrt(variance)
    return float(np.clip(theta_hat - half, 0.0, 1.0)), float(np.clip(theta_hat + half, 0.0, 1.0))


def _attempts(player: PlayerShots) -> tuple[int, int]:
    fga = player.n("3PT") + player.n("2PT")
    fta = player.n("FT")
    if fga + fta < 1:
        raise NoAttempts(f"player {player.player_id} has no attempts")
    return fga, fta


def true_shooting_pct(kind: Kind, player: PlayerShots) -> float:
    """points / (2 (FGA + 0.44 FTA)); rb swaps realized points for expected points."""
    fga, fta = _attempts(player)
    points = 0.0
    for shot_class in SHOT_CLASSES:
        shots = player.of(shot_class)
        made = shots.outcomes if kind == "raw" else shots.p_make
        points += POINTS[shot_class] * float(np.sum(made))
    return points / (2.0 * (fga + FT_WEIGHT * fta))


def shrunk_true_shooting_pct(player: PlayerShots, shrunk: dict[str, float]) -> float:
    """TS% from shrunk per-class percentages applied to the player's attempts."""
    fga, fta = _attempts(player)
    points = sum(
        POINTS[shot_class] * player.n(shot_class) * shrunk[shot_class]
        for shot_class in SHOT_CLASSES
        if player.n(shot_class)
    )
    return points / (2.0 * (fga + FT_WEIGHT * fta))


def estimate_class(
    player_id: str,
    shot_class: str,
    shots: ClassShots,
    cfg: Optional[ShrinkageCfg] = None,
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> PlayerEstimate:
    cfg = cfg or ShrinkageCfg()
    prior = (cfg.alpha0, cfg.beta0)
    n = shots.n
    theta_raw = raw_fg_pct(shots.outcomes)
    theta_rb = rb_fg_pct(shots.p_make)
    var_raw = estimator_variance("raw", theta_raw, n)

    try:
        beta_fit = fit_beta_mle(shots.p_make[shots.valid], optimizer_cfg)
        alpha, beta = beta_fit.alpha, beta_fit.beta
        var_rb = estimator_variance("rb", (alpha, beta), n)
        fit_status = "converged" if beta_fit.converged else "unconverged"
    except DegenerateSample as error:
        logger.debug(f"player {player_id} {shot_class}: {error}, using raw variance")
        alpha = beta = float("nan")
        var_rb = var_raw
        fit_status = "degenerate"

    if cfg.weight == "concentration" and fit_status != "degenerate":
        v_hat = alpha + beta
    else:
        v_hat = float(n)

    ci_lo, ci_hi = normal_ci(theta_rb, var_rb, cfg.ci_level)
    ci_raw_lo, ci_raw_hi = normal_ci(theta_raw, var_raw, cfg.ci_level)
    return PlayerEstimate(
        player_id=player_id,
        shot_class=shot_class,
        n=n,
        theta_raw=theta_raw,
        theta_rb=theta_rb,
        theta_shrunk_raw=shrink_estimate(theta_raw, v_hat, prior),
        theta_shrunk_rb=shrink_estimate(theta_rb, v_hat, prior),
        alpha=alpha,
        beta=beta,
        var_raw=var_raw,
        var_rb=var_rb,
        ci_lo=ci_lo,
        ci_hi=ci_hi,
        ci_raw_lo=ci_raw_lo,
        ci_raw_hi=ci_raw_hi,
        beta_fit=fit_status,
    )


def estimate_player(
    player: PlayerShots,
    cfg: Optional[ShrinkageCfg] = None,
    optimizer_cfg: Optional[OptimizerCfg] = None,
) -> list[PlayerEstimate]:
    """One estimate per shot class the player attempted, in class order."""
    return [
        estimate_class(player.player_id, shot_class, player.of(shot_class), cfg, optimizer_cfg)
        for shot_class in SHOT_CLASSES
        if player.n(shot_class)
    ]
