# External imports
import numpy as np
import pytest

# Own imports
from common.exceptions import DegenerateSample
from estimators.beta import beta_mean_concentration, beta_moments, beta_shapes, fit_beta_mle
from estimators.models import BetaFit


def test_beta_mle_recovers_generator(rng):
    draws = rng.beta(3.5, 6.5, 5000)

    fit = fit_beta_mle(draws)

    assert fit.converged
    assert fit.alpha == pytest.approx(3.5, abs=0.3)
    assert fit.beta == pytest.approx(6.5, abs=0.6)
    assert fit.theta == pytest.approx(0.35, abs=0.01)
    assert fit.v == pytest.approx(10.0, abs=1.5)


def test_constant_probabilities_are_degenerate():
    with pytest.raises(DegenerateSample):
        fit_beta_mle(np.full(20, 0.5))


def test_too_few_probabilities_are_degenerate():
    with pytest.raises(DegenerateSample):
        fit_beta_mle([0.2, 0.4, 0.6])


def test_moments_start_is_symmetric_on_symmetric_data():
    alpha, beta = beta_moments([0.3, 0.7, 0.4, 0.6, 0.5])

    assert alpha == pytest.approx(beta)


def test_shape_parameterizations_agree():
    alpha, beta = beta_shapes(0.35, 10.0)

    assert (alpha, beta) == pytest.approx((3.5, 6.5))
    assert beta_mean_concentration(alpha, beta) == pytest.approx((0.35, 10.0))
    assert BetaFit(alpha, beta).theta == pytest.approx(0.35)


def test_beta_fit_needs_positive_shapes():
    with pytest.raises(ValueError):
        BetaFit(0.0, 1.0)


@pytest.mark.slow
def test_beta_mle_is_consistent():
    closer = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        small = fit_beta_mle(rng.beta(3.5, 6.5, 500))
        large = fit_beta_mle(rng.beta(3.5, 6.5, 50_000))
        closer += np.hypot(large.alpha - 3.5, large.beta - 6.5) < np.hypot(
            small.alpha - 3.5, small.beta - 6.5
        )

    assert closer >= 18
