# External imports
import numpy as np
import pytest

# Own imports
from common.exceptions import InfeasibleFactors
from simulator.config import SimConfig
from simulator.trajectory import ShotTruth, crossing_point, gen_trajectory


SIM = SimConfig()
TRUTH = ShotTruth((29.25, 25.0), 11.0, 0.0, 45.0)


def test_noise_free_flight_ends_at_the_rim_plane():
    samples = gen_trajectory(TRUTH, SIM)

    assert samples[0, 3] == pytest.approx(SIM.release_height)
    assert np.allclose(np.diff(samples[:, 0]), 1.0 / SIM.sample_rate)
    assert samples[-1, 3] >= SIM.hoop_height - 1e-9


def test_sample_count_follows_the_sample_rate():
    samples = gen_trajectory(TRUTH, SIM)
    length = float(np.hypot(*(crossing_point(TRUTH, SIM) - np.array(TRUTH.release_xy))))
    # flight time from the horizontal speed of the drag-free arc
    slope = np.tan(np.radians(TRUTH.entry_angle))
    c2 = -(SIM.hoop_height - SIM.release_height + length * slope) / length**2
    flight_time = length / np.sqrt(SIM.gravity / (2.0 * -c2))

    assert len(samples) == int(np.floor(flight_time * SIM.sample_rate)) + 1


def test_crossing_point_sits_past_the_front_of_the_rim():
    point = crossing_point(ShotTruth((29.25, 25.0), 9.0, 0.0, 45.0), SIM)

    assert point == pytest.approx(np.array(SIM.hoop_xy))


def test_noise_is_seeded():
    first = gen_trajectory(TRUTH, SIM, np.random.default_rng(3))
    again = gen_trajectory(TRUTH, SIM, np.random.default_rng(3))

    assert np.array_equal(first, again)
    assert not np.array_equal(first, gen_trajectory(TRUTH, SIM))


@pytest.mark.parametrize("angle", [0.0, -5.0, 90.0])
def test_infeasible_entry_angles(angle):
    with pytest.raises(InfeasibleFactors):
        gen_trajectory(ShotTruth((29.25, 25.0), 11.0, 0.0, angle), SIM)
