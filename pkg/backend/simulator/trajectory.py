# Built-in imports
from dataclasses import dataclass
from typing import Optional

# External imports
import numpy as np

# Own imports
from common.exceptions import InfeasibleFactors
from simulator.config import SimConfig
from trajgeom.models import INCHES_PER_FOOT, ShotContext


@dataclass(frozen=True)
class ShotTruth:
    """True rim-plane factors of one shot and where it was released from."""

    release_xy: tuple[float, float]
    depth: float
    left_right: float
    entry_angle: float

    def context(self, cfg: SimConfig) -> ShotContext:
        return ShotContext(
            release_xy=self.release_xy,
            hoop_xy=cfg.hoop_xy,
            hoop_height=cfg.hoop_height,
            rim_radius=cfg.rim_radius,
        )


def crossing_point(truth: ShotTruth, cfg: SimConfig) -> np.ndarray:
    """Court xy where the true trajectory descends through hoop height."""
    ctx = truth.context(cfg)
    axis = ctx.shooter_axis
    right = np.array([axis[1], -axis[0]])
    along = truth.depth / INCHES_PER_FOOT - cfg.rim_radius
    across = truth.left_right / INCHES_PER_FOOT
    return np.asarray(cfg.hoop_xy, dtype=float) + along * axis + across * right


def gen_trajectory(
    truth: ShotTruth, cfg: SimConfig, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """
    Samples a drag-free ball flight from the release point at release_height
    to the true rim-plane crossing, at the tracking sample rate, with Gaussian
    position noise.
    :param rng (Optional(np.random.Generator)): noise source; None gives exact samples.
    :return (np.ndarray): (n, 4) array of t, x, y, z.
    """
    if not 0.0 < truth.entry_angle < 90.0:
        raise InfeasibleFactors(f"entry angle {truth.entry_angle} outside (0, 90)")

    release = np.asarray(truth.release_xy, dtype=float)
    crossing = crossing_point(truth, cfg)
    run = crossing - release
    length = float(np.hypot(*run))
    if length <= 1e-6:
        raise InfeasibleFactors("rim-plane crossing coincides with the release point")
    direction = run / length

    # z(s) = h0 + c1 s + c2 s^2 with z(L) = hoop height and z'(L) = -tan(angle)
    rise = cfg.hoop_height - cfg.release_height
    slope = np.tan(np.radians(truth.entry_angle))
    c2 = -(rise + length * slope) / length**2
    c1 = 2.0 * (rise + length * slope) / length - slope
    if c2 >= 0:
        raise InfeasibleFactors("trajectory would not descend through the rim plane")

    horizontal_speed = np.sqrt(cfg.gravity / (2.0 * -c2))
    flight_time = length / horizontal_speed
    t = np.arange(0.0, flight_time + 1e-12, 1.0 / cfg.sample_rate)
    s = horizontal_speed * t
    xy = release + s[:, None] * direction
    z = cfg.release_height + c1 * s + c2 * s * s

    if rng is not None:
        xy = xy + rng.normal(0.0, cfg.noise_xy, size=xy.shape) if cfg.noise_xy else xy
        z = z + rng.normal(0.0, cfg.noise_z, size=z.shape) if cfg.noise_z else z
    return np.column_stack([t, xy, np.clip(z, 0.0, None)])
