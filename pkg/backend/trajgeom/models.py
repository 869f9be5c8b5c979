"""Value types of the trajectory geometry package. Distances in feet."""

# Built-in imports
from dataclasses import dataclass, field
from typing import Optional

# External imports
import numpy as np


INCHES_PER_FOOT = 12.0
N_COEFFICIENTS = 6


@dataclass(frozen=True)
class TrackingSample:
    """One ball position; t is seconds since release, z is height."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError(f"sample time must be >= 0, got {self.t}")
        if self.z < 0:
            raise ValueError(f"sample height must be >= 0, got {self.z}")


@dataclass(frozen=True)
class ShotContext:
    release_xy: tuple[float, float]
    hoop_xy: tuple[float, float]
    hoop_height: float = 10.0
    rim_radius: float = 0.75

    def __post_init__(self) -> None:
        if self.rim_radius <= 0:
            raise ValueError("rim_radius must be > 0")
        if np.allclose(self.release_xy, self.hoop_xy):
            raise ValueError("release_xy must differ from hoop_xy")

    @property
    def shooter_axis(self) -> np.ndarray:
        """Unit vector from release toward the hoop."""
        axis = np.subtract(self.hoop_xy, self.release_xy, dtype=float)
        return axis / np.linalg.norm(axis)

    @property
    def shot_distance(self) -> float:
        return float(np.hypot(*np.subtract(self.hoop_xy, self.release_xy)))


def design_row(x, y) -> np.ndarray:
    """Columns [1, x, y, x^2, y^2, xy] of the quadratic height surface."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.stack([np.ones_like(x), x, y, x * x, y * y, x * y], axis=-1)


def shift_matrix(dx: float, dy: float) -> np.ndarray:
    """
    T such that beta_court = T @ beta_local when the local frame is the court
    frame translated by (dx, dy), i.e. x_local = x - dx, y_local = y - dy.
    """
    return np.array(
        [
            [1.0, -dx, -dy, dx * dx, dy * dy, dx * dy],
            [0.0, 1.0, 0.0, -2.0 * dx, 0.0, -dy],
            [0.0, 0.0, 1.0, 0.0, -2.0 * dy, -dx],
            [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )


@dataclass(frozen=True)
class LinePath:
    """Straight horizontal path; s is arclength (ft) from origin along direction."""

    origin_xy: np.ndarray
    direction_xy: np.ndarray
    speed: float
    t_range: tuple[float, float]

    def __post_init__(self) -> None:
        if not np.isclose(np.linalg.norm(self.direction_xy), 1.0, atol=1e-12):
            raise ValueError("direction_xy must be a unit vector")
        if self.speed <= 0:
            raise ValueError("speed must be > 0")

    def point_at(self, s: float) -> np.ndarray:
        return self.origin_xy + s * self.direction_xy

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinePath):
            return NotImplemented
        return (
            np.array_equal(self.origin_xy, other.origin_xy)
            and np.array_equal(self.direction_xy, other.direction_xy)
            and self.speed == other.speed
            and self.t_range == other.t_range
        )

    __hash__ = None


@dataclass(frozen=True)
class QuadraticFit:
    """
    Height surface z = beta . [1, x, y, x^2, y^2, xy] in court coordinates.

    :param precision: posterior precision of beta (X^T X for OLS).
    :param sigma2_shape/sigma2_scale: inverse-gamma posterior of the noise
        variance.
    :param frame_origin: xy origin the fit was solved in; sampling happens in
        that frame where the precision is well conditioned.
    """

    beta: np.ndarray
    precision: np.ndarray
    residual_rmse: float
    n_samples: int
    sigma2_shape: float
    sigma2_scale: float
    frame_origin: tuple[float, float] = (0.0, 0.0)
    method: str = "ols"

    def __post_init__(self) -> None:
        if self.beta.shape != (N_COEFFICIENTS,):
            raise ValueError("beta must have 6 coefficients")
        if not np.allclose(self.precision, self.precision.T, rtol=1e-9, atol=0):
            raise ValueError("precision must be symmetric")
        if self.residual_rmse < 0:
            raise ValueError("residual_rmse must be >= 0")

    @property
    def noise_variance(self) -> float:
        """Posterior mean of sigma^2 (mode when the mean is undefined)."""
        if self.sigma2_shape > 1:
            return self.sigma2_scale / (self.sigma2_shape - 1.0)
        return self.sigma2_scale / (self.sigma2_shape + 1.0)

    def local_posterior(self) -> tuple[np.ndarray, np.ndarray]:
        """(mean, precision) of the coefficients in the fit's own frame."""
        shift = shift_matrix(*self.frame_origin)
        beta_local = np.linalg.solve(shift, self.beta)
        precision_local = shift.T @ self.precision @ shift
        return beta_local, 0.5 * (precision_local + precision_local.T)

    def sample_coefficients(
        self, rng: np.random.Generator, size: int, scale: float = 1.0
    ) -> np.ndarray:
        """
        Draws court-frame coefficient vectors from N(beta, scale * sigma^2 Lambda^-1).
        :return (np.ndarray): array of shape (size, 6).
        """
        if scale == 0:
            return np.tile(self.beta, (size, 1))
        beta_local, precision_local = self.local_posterior()
        chol = np.linalg.cholesky(precision_local)
        normals = rng.standard_normal((N_COEFFICIENTS, size))
        # x = L^-T z has covariance Lambda^-1
        offsets = np.linalg.solve(chol.T, normals).T
        draws_local = beta_local + np.sqrt(scale * self.noise_variance) * offsets
        return draws_local @ shift_matrix(*self.frame_origin).T


def restrict_coefficients(beta: np.ndarray, origin_xy: np.ndarray, direction_xy: np.ndarray):
    """
    Coefficients (c0, c1, c2) of z(s) = c0 + c1 s + c2 s^2 along the line
    origin + s * direction. Broadcasts over leading axes of all three inputs.
    """
    ox, oy = np.moveaxis(np.asarray(origin_xy, dtype=float), -1, 0)
    dx, dy = np.moveaxis(np.asarray(direction_xy, dtype=float), -1, 0)
    b0, b1, b2, b3, b4, b5 = np.moveaxis(np.asarray(beta, dtype=float), -1, 0)
    c0 = b0 + b1 * ox + b2 * oy + b3 * ox * ox + b4 * oy * oy + b5 * ox * oy
    c1 = (
        b1 * dx
        + b2 * dy
        + 2.0 * b3 * ox * dx
        + 2.0 * b4 * oy * dy
        + b5 * (ox * dy + oy * dx)
    )
    c2 = b3 * dx * dx + b4 * dy * dy + b5 * dx * dy
    return c0, c1, c2


@dataclass(frozen=True)
class ShotFactors:
    """
    Rim-plane factors. depth/left_right in inches, entry_angle in degrees.
    Invalid shots carry NaN factors and a 0/1 fill probability.
    """

    depth: float
    left_right: float
    entry_angle: float
    valid: bool = True
    fill_prob: Optional[float] = None
    reason: str = ""

    def __post_init__(self) -> None:
        if self.valid:
            if not 0.0 < self.entry_angle <= 90.0:
                raise ValueError(f"entry_angle must be in (0, 90], got {self.entry_angle}")
        elif self.fill_prob not in (0.0, 1.0):
            raise ValueError("invalid factors need fill_prob 0 or 1")

    @classmethod
    def invalid(cls, outcome: int, reason: str) -> "ShotFactors":
        return cls(
            depth=float("nan"),
            left_right=float("nan"),
            entry_angle=float("nan"),
            valid=False,
            fill_prob=float(outcome),
            reason=reason,
        )


@dataclass(frozen=True)
class TrajectoryValidity:
    valid: bool
    reason: str = ""
    fill_prob: Optional[float] = None


@dataclass(frozen=True)
class ShotMeasurement:
    """Everything measure_shot learned about one shot."""

    factors: ShotFactors
    fit: Optional[QuadraticFit] = None
    path: Optional[LinePath] = None
    validity: TrajectoryValidity = field(default_factory=lambda: TrajectoryValidity(True))
