# External imports
import numpy as np
import pytest

# Own imports
from common.config import BayesCfg
from common.exceptions import NoDescendingCrossing
from simulator.config import SimConfig
from simulator.trajectory import ShotTruth, gen_trajectory
from trajgeom.crossing import compute_shot_factors, crossing_for_coefficients, rim_crossing
from trajgeom.fitting import fit_horizontal_path, fit_quadratic_bayes
from trajgeom.models import LinePath, QuadraticFit, ShotContext


def _fit_along_x(c0: float, c1: float, c2: float) -> QuadraticFit:
    """Surface whose restriction to the x axis is c0 + c1 s + c2 s^2."""
    return QuadraticFit(
        beta=np.array([c0, c1, 0.0, c2, 0.0, 0.0]),
        precision=np.eye(6),
        residual_rmse=0.0,
        n_samples=25,
        sigma2_shape=1.0,
        sigma2_scale=1.0,
    )


X_PATH = LinePath(
    origin_xy=np.zeros(2), direction_xy=np.array([1.0, 0.0]), speed=20.0, t_range=(0.0, 1.0)
)
X_CTX = ShotContext(release_xy=(0.0, 0.0), hoop_xy=(2.0, 0.0))


def test_descending_root_is_chosen():
    xy, slope = rim_crossing(_fit_along_x(7.0, 8.0, -4.0), X_PATH, X_CTX)

    np.testing.assert_allclose(xy, [1.5, 0.0], atol=1e-12)
    assert slope == pytest.approx(-4.0)


def test_apex_at_rim_height_is_a_tangency():
    with pytest.raises(NoDescendingCrossing):
        rim_crossing(_fit_along_x(10.0, 0.0, -1.0), X_PATH, X_CTX)


def test_profile_below_rim_never_crosses():
    with pytest.raises(NoDescendingCrossing):
        rim_crossing(_fit_along_x(9.0, 0.0, -1.0), X_PATH, X_CTX)


def test_rising_linear_profile_never_descends():
    with pytest.raises(NoDescendingCrossing):
        crossing_for_coefficients(np.array([7.0, 1.0, 0, 0, 0, 0]), X_PATH, X_CTX)


def test_descending_linear_profile_crosses():
    xy, slope = crossing_for_coefficients(np.array([12.0, -1.0, 0, 0, 0, 0]), X_PATH, X_CTX)

    np.testing.assert_allclose(xy, [2.0, 0.0])
    assert slope == -1.0


def test_crossing_at_centre_of_a_vertical_drop(ctx):
    factors = compute_shot_factors(np.array(ctx.hoop_xy), -1e12, ctx)

    assert factors.depth == pytest.approx(9.0)
    assert factors.left_right == pytest.approx(0.0)
    assert factors.entry_angle == pytest.approx(90.0)


def test_two_inches_deep_at_forty_five_degrees(ctx):
    crossing = np.array(ctx.hoop_xy) + (2.0 / 12.0) * ctx.shooter_axis

    factors = compute_shot_factors(crossing, -1.0, ctx)

    assert factors.depth == pytest.approx(11.0)
    assert factors.entry_angle == pytest.approx(45.0)


def test_left_is_negative(ctx):
    # Shooter faces -x, so their left is -y
    crossing = np.array(ctx.hoop_xy) + np.array([0.0, -3.0 / 12.0])

    factors = compute_shot_factors(crossing, -1.0, ctx)

    assert factors.left_right == pytest.approx(-3.0)


def test_ascending_ball_has_no_factors(ctx):
    with pytest.raises(NoDescendingCrossing):
        compute_shot_factors(np.array(ctx.hoop_xy), 0.5, ctx)


@pytest.mark.parametrize(
    "release, depth, left_right, angle",
    [
        ((29.25, 25.0), 11.0, 0.0, 45.0),
        ((20.0, 40.0), 8.5, -2.5, 38.0),
        ((12.0, 18.0), 13.0, 3.0, 52.0),
    ],
)
def test_noise_free_flight_round_trip(release, depth, left_right, angle):
    sim = SimConfig(noise_xy=0.0, noise_z=0.0)
    truth = ShotTruth(release, depth, left_right, angle)
    ctx = truth.context(sim)
    samples = gen_trajectory(truth, sim)

    # Pseudo-points and prior vanish; the prior precision must stay positive
    fit = fit_quadratic_bayes(samples, ctx, BayesCfg(prior_precision=1e-10, pseudo_weight=0.0))
    path = fit_horizontal_path(samples, ctx)
    factors = compute_shot_factors(*rim_crossing(fit, path, ctx), ctx)

    assert factors.depth == pytest.approx(depth, abs=1e-6)
    assert factors.left_right == pytest.approx(left_right, abs=1e-6)
    assert factors.entry_angle == pytest.approx(angle, abs=1e-6)
