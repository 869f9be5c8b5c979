# External imports
import numpy as np
import pytest
from scipy.optimize import rosen

# Own imports
from common.config import OptimizerCfg
from common.exceptions import MaxIterations
from estimators.optimize import nelder_mead_minimize


def test_one_dimensional_quadratic():
    result = nelder_mead_minimize(lambda x: float((x[0] - 2.0) ** 2), [0.0])

    assert result.converged
    assert result.x[0] == pytest.approx(2.0, abs=1e-6)


def test_rosenbrock():
    result = nelder_mead_minimize(rosen, [-1.2, 1.0])

    assert result.x == pytest.approx([1.0, 1.0], abs=1e-4)


def test_same_start_same_answer():
    first = nelder_mead_minimize(rosen, [-1.2, 1.0])
    again = nelder_mead_minimize(rosen, [-1.2, 1.0])

    assert np.array_equal(first.x, again.x)
    assert first.iterations == again.iterations


def test_iteration_cap_flags_or_raises():
    cfg = OptimizerCfg(max_iter=5)

    assert not nelder_mead_minimize(rosen, [-1.2, 1.0], cfg).converged
    with pytest.raises(MaxIterations) as raised:
        nelder_mead_minimize(rosen, [-1.2, 1.0], cfg, strict=True)
    assert raised.value.best.shape == (2,)


def test_objective_must_be_finite_at_start():
    with pytest.raises(ValueError):
        nelder_mead_minimize(lambda x: float("nan"), [0.0])
