# Built-in imports
from dataclasses import dataclass
from typing import Mapping, Sequence

# External imports
import numpy as np

# Own imports
from common.exceptions import EmptyShots, TrajectoryError
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from shotprob.features import expand_factors
from shotprob.logistic import ProbModel
from trajgeom.crossing import compute_shot_factors, crossing_for_coefficients
from trajgeom.models import ShotContext, ShotMeasurement


logger = custom_logger()


@dataclass(frozen=True)
class ResampleShot:
    """A measured shot with what is needed to redraw its trajectory."""

    measurement: ShotMeasurement
    ctx: ShotContext
    outcome: int

    @property
    def resamplable(self) -> bool:
        m = self.measurement
        return m.factors.valid and m.fit is not None and m.path is not None


def _redrawn_probs(
    model: ProbModel,
    shot: ResampleShot,
    rng: np.random.Generator,
    repeats: int,
    covariance_scale: float,
    tangency_tol: float,
) -> np.ndarray:
    """Make probability of one shot under `repeats` posterior coefficient draws."""
    fill = float(shot.outcome)
    if not shot.resamplable:
        return np.full(repeats, fill)

    m = shot.measurement
    draws = m.fit.sample_coefficients(rng, repeats, covariance_scale)
    rows, hit = [], np.zeros(repeats, dtype=bool)
    for r, beta in enumerate(draws):
        try:
            xy, slope = crossing_for_coefficients(beta, m.path, shot.ctx, tangency_tol)
            factors = compute_shot_factors(xy, slope, shot.ctx)
        except TrajectoryError:
            continue
        hit[r] = True
        rows.append((factors.depth, factors.left_right, factors.entry_angle))

    probs = np.full(repeats, fill)
    if rows:
        d, lr, a = np.asarray(rows).T
        probs[hit] = model.predict(expand_factors(d, lr, a))
    return probs


def simulated_rb_sd(
    model: ProbModel,
    shots_by_player: Mapping[str, Sequence[ResampleShot]],
    repeats: int = 10,
    seed: int = 0,
    covariance_scale: float = 1.0,
    tangency_tol: float = 1e-6,
    jobs: int = 1,
) -> dict[str, float]:
    """
    Standard deviation of each player's RB estimator once shot-factor
    uncertainty is propagated: per repeat, every shot's height coefficients
    are redrawn from their posterior, factors and make probabilities are
    recomputed (draws that miss the rim plane use the shot's fill), and the
    empirical sd of the mean probability, std(p) / sqrt(n), is taken. The
    result is the average over repeats.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    player_ids = sorted(shots_by_player)
    streams = np.random.SeedSequence(seed).spawn(len(player_ids))

    def one_player(item: tuple[str, np.random.SeedSequence]) -> float:
        player_id, stream = item
        shots = shots_by_player[player_id]
        if len(shots) < 2:
            raise EmptyShots(f"player {player_id} needs at least 2 shots for an sd")
        rng = np.random.default_rng(stream)
        # rows: shots, columns: repeats
        probs = np.vstack(
            [
                _redrawn_probs(model, shot, rng, repeats, covariance_scale, tangency_tol)
                for shot in shots
            ]
        )
        sds = probs.std(axis=0, ddof=1) / np.sqrt(len(shots))
        return float(np.mean(sds))

    results = ordered_map(one_player, list(zip(player_ids, streams)), jobs)
    logger.debug(
        {"players": len(results), "repeats": repeats, "scale": covariance_scale},
        message_details="simulated_rb_sd",
    )
    return dict(zip(player_ids, results))
