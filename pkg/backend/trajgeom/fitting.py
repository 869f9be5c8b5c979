# Built-in imports
from typing import Optional, Sequence, Union

# External imports
import numpy as np

# Own imports
from common.config import BayesCfg
from common.exceptions import DegeneratePath, RankDeficient, TrajectoryError
from common.logger import custom_logger
from trajgeom.models import (
    N_COEFFICIENTS,
    LinePath,
    QuadraticFit,
    ShotContext,
    TrackingSample,
    design_row,
    shift_matrix,
)


logger = custom_logger()

SampleInput = Union[Sequence[TrackingSample], np.ndarray]

PSEUDO_POINTS_PER_END = 2


def as_sample_array(samples: SampleInput) -> np.ndarray:
    """
    Normalizes samples to an (n, 4) float array of [t, x, y, z] sorted by
    (t, x, y), so results never depend on the order rows arrive in.
    """
    if isinstance(samples, np.ndarray):
        array = np.asarray(samples, dtype=float).reshape(-1, 4)
    else:
        array = np.array([(s.t, s.x, s.y, s.z) for s in samples], dtype=float)
        array = array.reshape(-1, 4)
    order = np.lexsort((array[:, 2], array[:, 1], array[:, 0]))
    return array[order]


def _scaled_condition(design: np.ndarray) -> float:
    """Condition number of the normal matrix after scaling columns to unit norm."""
    norms = np.linalg.norm(design, axis=0)
    if np.any(norms == 0):
        return float("inf")
    singular = np.linalg.svd(design / norms, compute_uv=False)
    if singular[-1] == 0:
        return float("inf")
    return float((singular[0] / singular[-1]) ** 2)


def fit_quadratic_ols(samples: SampleInput, max_condition: float = 1e12) -> QuadraticFit:
    """
    Least-squares fit of the quadratic height surface.
    :param samples: tracking samples of one shot.
    :param max_condition (float): normal-matrix condition above which the
        geometry is treated as degenerate.
    """
    data = as_sample_array(samples)
    n = data.shape[0]
    if n < N_COEFFICIENTS:
        raise RankDeficient(
            f"{n} samples cannot determine {N_COEFFICIENTS} coefficients",
            condition=float("inf"),
        )

    x, y, z = data[:, 1], data[:, 2], data[:, 3]
    origin = (float(x.mean()), float(y.mean()))
    local_design = design_row(x - origin[0], y - origin[1])

    condition = _scaled_condition(local_design)
    if condition > max_condition:
        raise RankDeficient(
            f"design matrix condition {condition:.3g} exceeds {max_condition:.3g}",
            condition=condition,
        )

    beta_local = np.linalg.lstsq(local_design, z, rcond=None)[0]
    residuals = z - local_design @ beta_local
    ssr = float(residuals @ residuals)

    court_design = design_row(x, y)
    return QuadraticFit(
        beta=shift_matrix(*origin) @ beta_local,
        precision=court_design.T @ court_design,
        residual_rmse=float(np.sqrt(ssr / n)),
        n_samples=n,
        sigma2_shape=max((n - N_COEFFICIENTS) / 2.0, 1e-3),
        sigma2_scale=max(ssr / 2.0, 1e-12),
        frame_origin=origin,
        method="ols",
    )


def conjugate_update(
    mean: np.ndarray,
    precision: np.ndarray,
    shape: float,
    scale: float,
    design: np.ndarray,
    target: np.ndarray,
    weights: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, np.ndarray, float, float]:
    """
    One Normal-inverse-gamma update of a linear model:
    Lambda_n = X^T W X + Lambda_0,
    u_n = Lambda_n^-1 (Lambda_0 u_0 + X^T W z).
    :return: (u_n, Lambda_n, a_n, b_n)
    """
    if weights is None:
        weights = np.ones(design.shape[0])
    weighted = design * weights[:, None]
    precision_n = precision + design.T @ weighted
    precision_n = 0.5 * (precision_n + precision_n.T)
    mean_n = np.linalg.solve(precision_n, precision @ mean + weighted.T @ target)

    residuals = target - design @ mean_n
    prior_gap = mean_n - mean
    shape_n = shape + 0.5 * float(weights.sum())
    scale_n = scale + 0.5 * (
        float(residuals @ (weights * residuals)) + float(prior_gap @ precision @ prior_gap)
    )
    return mean_n, precision_n, shape_n, scale_n


def fit_quadratic_bayes(
    samples: SampleInput, ctx: ShotContext, cfg: Optional[BayesCfg] = None
) -> QuadraticFit:
    """
    Bayesian fit of the height surface with two sequential conjugate updates:
    first with pseudo-points at release (release height) and at the hoop centre
    (hoop height), then with the tracking samples. The regression is solved in a
    frame centred on the hoop; prior_mean is expressed in that frame.
    """
    cfg = cfg or BayesCfg()
    data = as_sample_array(samples)
    n = data.shape[0]
    if n < 1:
        raise TrajectoryError("bayesian fit needs at least one tracking sample")

    hoop_x, hoop_y = ctx.hoop_xy
    release_x, release_y = ctx.release_xy

    mean = np.asarray(cfg.prior_mean, dtype=float)
    precision = cfg.prior_precision * np.eye(N_COEFFICIENTS)
    shape, scale = cfg.sigma2_shape, cfg.sigma2_scale

    # Update 1: pseudo-data at the start and the end of the shot
    pseudo_x = np.array([release_x] * PSEUDO_POINTS_PER_END + [hoop_x] * PSEUDO_POINTS_PER_END)
    pseudo_y = np.array([release_y] * PSEUDO_POINTS_PER_END + [hoop_y] * PSEUDO_POINTS_PER_END)
    pseudo_z = np.array(
        [cfg.release_height] * PSEUDO_POINTS_PER_END + [ctx.hoop_height] * PSEUDO_POINTS_PER_END
    )
    mean, precision, shape, scale = conjugate_update(
        mean,
        precision,
        shape,
        scale,
        design_row(pseudo_x - hoop_x, pseudo_y - hoop_y),
        pseudo_z,
        np.full(pseudo_z.shape, cfg.pseudo_weight),
    )

    # Update 2: the tracking samples
    x, y, z = data[:, 1], data[:, 2], data[:, 3]
    local_design = design_row(x - hoop_x, y - hoop_y)
    mean, precision, shape, scale = conjugate_update(mean, precision, shape, scale, local_design, z)

    residuals = z - local_design @ mean
    shift = shift_matrix(hoop_x, hoop_y)
    shift_inv = np.linalg.inv(shift)
    court_precision = shift_inv.T @ precision @ shift_inv
    return QuadraticFit(
        beta=shift @ mean,
        precision=0.5 * (court_precision + court_precision.T),
        residual_rmse=float(np.sqrt(residuals @ residuals / n)),
        n_samples=n,
        sigma2_shape=shape,
        sigma2_scale=scale,
        frame_origin=(float(hoop_x), float(hoop_y)),
        method="bayes",
    )


def fit_horizontal_path(samples: SampleInput, ctx: Optional[ShotContext] = None) -> LinePath:
    """
    Least-squares straight line x(t), y(t) through the samples.

    With a context the direction is oriented from release toward the hoop and
    the origin is the release point projected on the line; without one the
    direction follows the velocity and the origin is the position at the first
    sample. Samples with no horizontal motion fall back to the release-to-hoop
    line when a context is supplied.
    """
    data = as_sample_array(samples)
    if data.shape[0] < 1:
        raise DegeneratePath("no samples to fit a horizontal path")
    t, xy = data[:, 0], data[:, 1:3]
    t_range = (float(t.min()), float(t.max()))
    t_span = t_range[1] - t_range[0]

    static = data.shape[0] < 2 or np.all(xy == xy[0])
    if static or t_span == 0:
        if ctx is None:
            raise DegeneratePath("samples have no horizontal motion")
        logger.debug("static horizontal samples, using release-to-hoop line")
        speed = ctx.shot_distance / t_span if t_span > 0 else ctx.shot_distance
        return LinePath(
            origin_xy=np.asarray(ctx.release_xy, dtype=float),
            direction_xy=ctx.shooter_axis,
            speed=float(speed),
            t_range=t_range,
        )

    design = np.column_stack([np.ones_like(t), t])
    coef = np.linalg.lstsq(design, xy, rcond=None)[0]
    intercept, velocity = coef[0], coef[1]
    speed = float(np.linalg.norm(velocity))
    if speed == 0:
        raise DegeneratePath("fitted horizontal velocity is zero")
    direction = velocity / speed

    if ctx is None:
        origin = intercept + velocity * t_range[0]
    else:
        if direction @ (np.asarray(ctx.hoop_xy) - np.asarray(ctx.release_xy)) < 0:
            direction = -direction
        anchor = intercept + velocity * t.mean()
        release = np.asarray(ctx.release_xy, dtype=float)
        origin = anchor + ((release - anchor) @ direction) * direction

    return LinePath(
        origin_xy=origin,
        direction_xy=direction,
        speed=speed,
        t_range=t_range,
    )
