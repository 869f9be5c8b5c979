# Built-in imports
from typing import Literal, Optional

# Own imports
from common.config import BayesCfg, ValidityCfg
from common.exceptions import TrajectoryError
from common.logger import custom_logger
from trajgeom.crossing import compute_shot_factors, rim_crossing
from trajgeom.fitting import (
    SampleInput,
    as_sample_array,
    fit_horizontal_path,
    fit_quadratic_bayes,
    fit_quadratic_ols,
)
from trajgeom.models import (
    QuadraticFit,
    ShotContext,
    ShotFactors,
    ShotMeasurement,
    TrajectoryValidity,
)


logger = custom_logger()


def validate_trajectory(
    samples: SampleInput,
    fit: Optional[QuadraticFit],
    cfg: Optional[ValidityCfg] = None,
    crossing_found: bool = True,
    outcome: Optional[int] = None,
) -> TrajectoryValidity:
    """
    Keeps a modelled trajectory only when it has enough samples, stays close
    to the raw data and crosses the rim plane. Rejected shots carry a fill
    probability equal to their outcome.
    """
    cfg = cfg or ValidityCfg()
    n_samples = as_sample_array(samples).shape[0]

    if n_samples < cfg.min_samples:
        reason = "too_few_samples"
    elif fit is None:
        reason = "no_fit"
    elif fit.residual_rmse > cfg.max_rmse:
        reason = "residual_rmse"
    elif not crossing_found:
        reason = "no_descending_crossing"
    else:
        return TrajectoryValidity(valid=True)

    fill = None if outcome is None else float(outcome)
    return TrajectoryValidity(valid=False, reason=reason, fill_prob=fill)


def measure_shot(
    samples: SampleInput,
    ctx: ShotContext,
    outcome: int,
    method: Literal["bayes", "ols"] = "bayes",
    bayes_cfg: Optional[BayesCfg] = None,
    validity_cfg: Optional[ValidityCfg] = None,
) -> ShotMeasurement:
    """
    Fit, path, rim crossing, shot factors and validity for one shot.
    Trajectory errors never escape: they turn the shot into a filled one.
    """
    validity_cfg = validity_cfg or ValidityCfg()
    data = as_sample_array(samples)

    if ctx.shot_distance < validity_cfg.min_path_length:
        validity = TrajectoryValidity(False, "too_close", float(outcome))
        return ShotMeasurement(
            factors=ShotFactors.invalid(outcome, validity.reason), validity=validity
        )

    fit = path = None
    crossing = None
    failure = ""
    try:
        if method == "ols":
            fit = fit_quadratic_ols(data, max_condition=validity_cfg.max_condition)
        else:
            fit = fit_quadratic_bayes(data, ctx, bayes_cfg)
        path = fit_horizontal_path(data, ctx)
        crossing = rim_crossing(fit, path, ctx, validity_cfg.tangency_tol)
    except TrajectoryError as error:
        failure = getattr(error, "reason", "trajectory_error")
        logger.debug(f"trajectory rejected: {failure}: {error}")

    validity = validate_trajectory(
        data, fit, validity_cfg, crossing_found=crossing is not None, outcome=outcome
    )
    if not validity.valid:
        reason = validity.reason
        if failure and reason in ("no_fit", "no_descending_crossing"):
            reason = failure
        validity = TrajectoryValidity(False, reason, validity.fill_prob)
        return ShotMeasurement(
            factors=ShotFactors.invalid(outcome, reason),
            fit=fit,
            path=path,
            validity=validity,
        )

    factors = compute_shot_factors(crossing[0], crossing[1], ctx)
    return ShotMeasurement(factors=factors, fit=fit, path=path, validity=validity)
