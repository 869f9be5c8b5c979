# Built-in imports
from typing import Optional

# External imports
import numpy as np
from scipy.special import betaln

# Own imports
from common.config import OptimizerCfg
from common.exceptions import DegenerateSample
from common.logger import custom_logger
from estimators.models import BetaFit
from estimators.optimize import nelder_mead_minimize


logger = custom_logger()

VALUE_CLIP = 1e-9
MIN_VALUES = 5
MIN_VARIANCE = 1e-10


def beta_shapes(theta: float, v: float) -> tuple[float, float]:
    """(alpha, beta) from mean theta and concentration v."""
    return theta * v, (1.0 - theta) * v


def beta_mean_concentration(alpha: float, beta: float) -> tuple[float, float]:
    """(theta, v) from the shape parameters."""
    return alpha / (alpha + beta), alpha + beta


def beta_moments(values) -> tuple[float, float]:
    """Method-of-moments shapes, used as the likelihood search start."""
    x = np.asarray(values, dtype=float)
    mean = float(np.mean(x))
    variance = float(np.var(x))
    common = mean * (1.0 - mean) / variance - 1.0 if variance > 0 else 0.0
    if common <= 0:
        # Moments not attainable by a Beta; start from a flat-ish guess at the mean
        common = 2.0
    return mean * common, (1.0 - mean) * common


def _prepare(values) -> np.ndarray:
    x = np.asarray(values, dtype=float).ravel()
    if x.size < MIN_VALUES:
        raise DegenerateSample(f"{x.size} probabilities, need at least {MIN_VALUES}")
    if np.any((x < 0) | (x > 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    if np.var(x, ddof=1) <= MIN_VARIANCE:
        raise DegenerateSample(
            "probabilities have near-zero variance, concentration unidentifiable"
        )
    return np.clip(x, VALUE_CLIP, 1.0 - VALUE_CLIP)


def fit_beta_mle(values, cfg: Optional[OptimizerCfg] = None) -> BetaFit:
    """
    Maximum-likelihood Beta fit to per-shot make probabilities, searched by
    Nelder-Mead over (log alpha, log beta) from the method-of-moments start.
    """
    x = _prepare(values)
    n = x.size
    sum_log = float(np.sum(np.log(x)))
    sum_log1m = float(np.sum(np.log1p(-x)))

    def negloglik(log_shapes: np.ndarray) -> float:
        a, b = np.exp(log_shapes)
        return -((a - 1.0) * sum_log + (b - 1.0) * sum_log1m - n * betaln(a, b))

    start = np.log(beta_moments(x))
    result = nelder_mead_minimize(negloglik, start, cfg)
    alpha, beta = np.exp(result.x)
    logger.debug(
        {"alpha": alpha, "beta": beta, "n": n, "iterations": result.iterations},
        message_details="fit_beta_mle",
    )
    return BetaFit(
        alpha=float(alpha), beta=float(beta), loglik=-result.fun, converged=result.converged
    )
