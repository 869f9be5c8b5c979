# Built-in imports
import time

# External imports
import pytest

# Own imports
from common.helpers.parallel_helper import ordered_map


@pytest.mark.parametrize("jobs", [1, 2, 8])
def test_results_keep_input_order(jobs):
    def slow_square(x: int) -> int:
        time.sleep(0.001 * (10 - x))
        return x * x

    assert ordered_map(slow_square, range(10), jobs) == [x * x for x in range(10)]


def test_errors_propagate():
    def fail(x: int) -> int:
        raise KeyError(x)

    with pytest.raises(KeyError):
        ordered_map(fail, [1, 2, 3], jobs=2)
