# External imports
import numpy as np
import pytest

# Own imports
from common.config import BayesCfg
from common.exceptions import DegeneratePath, RankDeficient
from trajgeom.fitting import (
    as_sample_array,
    fit_horizontal_path,
    fit_quadratic_bayes,
    fit_quadratic_ols,
)
from trajgeom.models import ShotContext, TrackingSample, design_row

TRUE_BETA = np.array([7.0, 8.0, 0.0, -4.0, 0.0, 0.0])
# Hoop next to the sample grid keeps the hoop-centred fit well conditioned
NEAR_CTX = ShotContext(release_xy=(25.0, 0.0), hoop_xy=(1.0, 0.0))


def _grid_samples(beta: np.ndarray, n_side: int = 5) -> np.ndarray:
    """Samples on a 2-D grid so every coefficient is identifiable."""
    xs, ys = np.meshgrid(np.linspace(0.0, 2.0, n_side), np.linspace(-1.0, 1.0, n_side))
    x, y = xs.ravel(), ys.ravel()
    t = np.arange(x.size) * 0.04
    return np.column_stack([t, x, y, design_row(x, y) @ beta])


def test_ols_recovers_exact_surface():
    fit = fit_quadratic_ols(_grid_samples(TRUE_BETA))

    np.testing.assert_allclose(fit.beta, TRUE_BETA, atol=1e-9)
    assert fit.residual_rmse == pytest.approx(0.0, abs=1e-9)
    assert fit.n_samples == 25


def test_ols_needs_six_samples():
    with pytest.raises(RankDeficient):
        fit_quadratic_ols(_grid_samples(TRUE_BETA)[:5])


def test_ols_rejects_collinear_samples():
    s = np.linspace(0.0, 2.0, 20)
    samples = np.column_stack([s * 0.04, s, np.zeros_like(s), 7 + 8 * s - 4 * s * s])

    with pytest.raises(RankDeficient) as error:
        fit_quadratic_ols(samples)
    assert error.value.condition > 1e12


def test_ols_noise_stays_within_three_standard_errors(rng):
    base = _grid_samples(TRUE_BETA)
    sigma = 0.4
    inside = []
    for _ in range(100):
        noisy = base.copy()
        noisy[:, 3] += rng.normal(0.0, sigma, size=len(noisy))
        fit = fit_quadratic_ols(noisy)
        se = sigma * np.sqrt(np.diag(np.linalg.inv(fit.precision)))
        inside.append(np.all(np.abs(fit.beta - TRUE_BETA) <= 3 * se))
    # 6 coefficients per trial at 3 sigma
    assert np.mean(inside) > 0.9


def test_bayes_with_vanishing_prior_matches_ols():
    samples = _grid_samples(TRUE_BETA)
    samples[:, 3] += np.sin(np.arange(len(samples)))
    cfg = BayesCfg(prior_precision=1e-9, pseudo_weight=0.0)

    ols = fit_quadratic_ols(samples)
    bayes = fit_quadratic_bayes(samples, NEAR_CTX, cfg)

    np.testing.assert_allclose(bayes.beta, ols.beta, rtol=1e-6, atol=1e-6)
    assert bayes.method == "bayes"


def test_dominant_pseudo_points_pin_release_and_hoop():
    ctx = NEAR_CTX
    samples = _grid_samples(TRUE_BETA)[:8]
    fit = fit_quadratic_bayes(samples, ctx, BayesCfg(pseudo_weight=1e6))

    assert design_row(*ctx.release_xy) @ fit.beta == pytest.approx(7.0, abs=1e-3)
    assert design_row(*ctx.hoop_xy) @ fit.beta == pytest.approx(10.0, abs=1e-3)


def test_bayes_accepts_a_single_sample(ctx):
    fit = fit_quadratic_bayes(np.array([[0.0, 20.0, 25.0, 12.0]]), ctx)

    assert fit.n_samples == 1
    assert np.all(np.isfinite(fit.beta))


def test_sample_order_does_not_change_the_fit():
    ctx = NEAR_CTX
    samples = _grid_samples(TRUE_BETA)
    shuffled = samples[::-1]
    records = [TrackingSample(*row) for row in shuffled]

    np.testing.assert_array_equal(as_sample_array(records), as_sample_array(samples))
    np.testing.assert_array_equal(
        fit_quadratic_bayes(records, ctx).beta, fit_quadratic_bayes(samples, ctx).beta
    )


def test_horizontal_path_on_exact_line():
    t = np.linspace(0.0, 1.0, 11)
    samples = np.column_stack([t, 1.0 + 3.0 * t, 2.0 + 4.0 * t, np.full_like(t, 8.0)])

    path = fit_horizontal_path(samples)

    np.testing.assert_allclose(path.direction_xy, [0.6, 0.8], atol=1e-12)
    np.testing.assert_allclose(path.origin_xy, [1.0, 2.0], atol=1e-12)
    assert path.speed == pytest.approx(5.0)


def test_horizontal_path_is_oriented_by_the_hoop(ctx):
    t = np.linspace(0.0, 1.0, 11)
    toward = np.column_stack([t, 29.25 - 20.0 * t, np.full_like(t, 25.0), np.full_like(t, 8.0)])
    away = toward.copy()
    away[:, 1] = toward[::-1, 1]

    forward = fit_horizontal_path(toward, ctx)
    backward = fit_horizontal_path(away, ctx)

    np.testing.assert_allclose(forward.origin_xy, backward.origin_xy, atol=1e-9)
    np.testing.assert_allclose(forward.direction_xy, backward.direction_xy, atol=1e-12)
    assert forward.speed == pytest.approx(backward.speed)
    assert forward.t_range == backward.t_range
    np.testing.assert_allclose(forward.direction_xy, [-1.0, 0.0], atol=1e-12)


def test_horizontal_path_direction_under_noise(ctx, rng):
    t = np.linspace(0.0, 1.0, 25)
    truth = np.array([-0.96, 0.28])
    errors = []
    for _ in range(100):
        xy = np.array(ctx.release_xy) + 20.0 * t[:, None] * truth
        xy += rng.normal(0.0, 0.1, size=xy.shape)
        samples = np.column_stack([t, xy, np.full_like(t, 9.0)])
        path = fit_horizontal_path(samples, ctx)
        errors.append(np.degrees(np.arccos(np.clip(path.direction_xy @ truth, -1, 1))))
    assert max(errors) < 2.0


def test_static_samples_without_context_are_degenerate():
    samples = np.array([[0.0, 3.0, 4.0, 8.0], [0.1, 3.0, 4.0, 9.0]])

    with pytest.raises(DegeneratePath):
        fit_horizontal_path(samples)


def test_static_samples_fall_back_to_release_line(ctx):
    samples = np.array([[0.0, 10.0, 25.0, 8.0], [0.5, 10.0, 25.0, 9.0]])

    path = fit_horizontal_path(samples, ctx)

    np.testing.assert_allclose(path.origin_xy, ctx.release_xy)
    np.testing.assert_allclose(path.direction_xy, ctx.shooter_axis)
