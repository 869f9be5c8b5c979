# Built-in imports
from typing import TYPE_CHECKING, Optional, Sequence

# External imports
import numpy as np

# Own imports
from common.exceptions import InvalidFactors
from trajgeom.models import ShotFactors

if TYPE_CHECKING:
    from shotprob.logistic import ProbModel


# Ordered feature basis: [1, D, LR, A, D^2, LR^2, A^2, D*LR, D*A, LR*A]
FEATURE_NAMES = (
    "intercept",
    "depth",
    "left_right",
    "entry_angle",
    "depth_sq",
    "left_right_sq",
    "entry_angle_sq",
    "depth_x_left_right",
    "depth_x_entry_angle",
    "left_right_x_entry_angle",
)
N_FEATURES = len(FEATURE_NAMES)

FeatureVector = np.ndarray


def expand_factors(depth, left_right, entry_angle) -> np.ndarray:
    """Polynomial expansion of raw factors (inches, inches, degrees)."""
    d = np.asarray(depth, dtype=float)
    lr = np.asarray(left_right, dtype=float)
    a = np.asarray(entry_angle, dtype=float)
    return np.stack(
        [np.ones_like(d), d, lr, a, d * d, lr * lr, a * a, d * lr, d * a, lr * a],
        axis=-1,
    )


def build_features(factors: ShotFactors, model: Optional["ProbModel"] = None) -> FeatureVector:
    """
    Feature vector of one valid shot, standardized with the model's stored
    mean/scale when a model is given.
    """
    if not factors.valid:
        raise InvalidFactors(f"cannot build features of an invalid shot ({factors.reason})")
    vector = expand_factors(factors.depth, factors.left_right, factors.entry_angle)
    return vector if model is None else model.standardize(vector)


def feature_matrix(factors: Sequence[ShotFactors]) -> np.ndarray:
    """Stacks the raw feature vectors of valid shots, shape (n, 10)."""
    if not factors:
        return np.empty((0, N_FEATURES))
    return np.vstack([build_features(f) for f in factors])
