# External imports
import numpy as np
import pytest

# Own imports
from shotprob.features import expand_factors
from simulator.config import SimConfig
from simulator.outcome import true_coefficients


@pytest.fixture(scope="module")
def generated_rows():
    """50k feature rows with outcomes drawn from a known logistic surface."""
    rng = np.random.default_rng(404)
    n = 50_000
    depth = rng.normal(11.0, 4.0, n)
    left_right = rng.normal(0.0, 3.0, n)
    angle = rng.normal(45.0, 5.0, n)
    w_star = true_coefficients(SimConfig())
    features = expand_factors(depth, left_right, angle)
    p_true = 1.0 / (1.0 + np.exp(-(features @ w_star)))
    outcomes = (rng.random(n) < p_true).astype(int)
    return features, outcomes, p_true, w_star
