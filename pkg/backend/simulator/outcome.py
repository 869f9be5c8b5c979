"""
Ground-truth make model of the synthetic league: a logistic surface over the
shot-factor basis peaking at the ideal entry, plus the skill-to-spread link.
"""

# Built-in imports
from functools import lru_cache

# External imports
import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.optimize import brentq
from scipy.special import expit

# Own imports
from shotprob.features import expand_factors
from simulator.config import SimConfig


HERMITE_NODES = 16
SPREAD_BOUNDS = (1e-4, 25.0)


def true_coefficients(cfg: SimConfig) -> np.ndarray:
    """
    w* in raw units for eta = h - sum_k (f_k - c_k)^2 / (2 s_k^2), expanded
    into [1, D, LR, A, D^2, LR^2, A^2, D*LR, D*A, LR*A].
    """
    center = np.asarray(cfg.factor_center, dtype=float)
    sd = np.asarray(cfg.surface_sd, dtype=float)
    curvature = 1.0 / sd**2
    return np.array(
        [
            cfg.optimum_height - 0.5 * float(np.sum(center**2 * curvature)),
            *(center * curvature),
            *(-0.5 * curvature),
            0.0,
            0.0,
            0.0,
        ]
    )


def true_make_prob(cfg: SimConfig, depth, left_right, entry_angle) -> np.ndarray:
    w = true_coefficients(cfg)
    if cfg.outcome_model == "geometric":
        return geometric_make(cfg, depth, left_right, entry_angle).astype(float)
    return expit(expand_factors(depth, left_right, entry_angle) @ w)


def geometric_make(cfg: SimConfig, depth, left_right, entry_angle) -> np.ndarray:
    """
    Deterministic make rule: the ball centre must pass inside the rim shrunk
    by the ball radius, the depth half-axis further shortened by 1/sin(angle).
    """
    rim_in = 12.0 * cfg.rim_radius
    offset = np.asarray(depth, dtype=float) - rim_in
    angle = np.radians(np.asarray(entry_angle, dtype=float))
    lateral = rim_in - cfg.ball_radius_in
    along = rim_in - cfg.ball_radius_in / np.sin(angle)
    with np.errstate(divide="ignore", invalid="ignore"):
        inside = (offset / along) ** 2 + (np.asarray(left_right, float) / lateral) ** 2 <= 1.0
    return np.where(along > 0, inside, False)


@lru_cache(maxsize=None)
def _hermite() -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = hermgauss(HERMITE_NODES)
    return nodes, weights / np.sqrt(np.pi)


def expected_make_prob(spread: float, cfg: SimConfig) -> float:
    """
    E[p] when the three factors are independent normals around factor_center
    with sd spread * factor_sd (angle clipped to angle_bounds), by tensor
    Gauss-Hermite quadrature.
    """
    nodes, weights = _hermite()
    shifts = np.sqrt(2.0) * nodes
    sd = spread * np.asarray(cfg.factor_sd, dtype=float)
    center = np.asarray(cfg.factor_center, dtype=float)
    d, lr, a = np.meshgrid(
        center[0] + sd[0] * shifts,
        center[1] + sd[1] * shifts,
        np.clip(center[2] + sd[2] * shifts, *cfg.angle_bounds),
        indexing="ij",
    )
    w = weights[:, None, None] * weights[None, :, None] * weights[None, None, :]
    return float(np.sum(w * true_make_prob(cfg, d, lr, a)))


def spread_for_skill(theta: float, cfg: SimConfig) -> float:
    """
    Factor spread multiplier whose expected make probability is theta. Skills
    outside the attainable range are mapped to the nearest bound.
    """
    lo, hi = SPREAD_BOUNDS
    best, worst = expected_make_prob(lo, cfg), expected_make_prob(hi, cfg)
    if theta >= best:
        return lo
    if theta <= worst:
        return hi
    return float(brentq(lambda k: expected_make_prob(k, cfg) - theta, lo, hi, xtol=1e-10))
