# External imports
import numpy as np
import pytest

# Own imports
from common.exceptions import InvalidFactors
from shotprob.features import FEATURE_NAMES, build_features, expand_factors, feature_matrix
from trajgeom.models import ShotFactors


def test_origin_expands_to_intercept_only():
    np.testing.assert_array_equal(expand_factors(0.0, 0.0, 0.0), [1, 0, 0, 0, 0, 0, 0, 0, 0, 0])


def test_expansion_order():
    vector = build_features(ShotFactors(1.0, 2.0, 3.0))

    np.testing.assert_array_equal(vector, [1, 1, 2, 3, 1, 4, 9, 2, 3, 6])
    assert len(FEATURE_NAMES) == vector.size


def test_invalid_shot_has_no_features():
    with pytest.raises(InvalidFactors):
        build_features(ShotFactors.invalid(1, "residual_rmse"))


def test_feature_matrix_of_no_shots():
    assert feature_matrix([]).shape == (0, 10)


def test_expansion_broadcasts_over_grids():
    depth, lr = np.meshgrid(np.arange(3.0), np.arange(4.0), indexing="ij")

    assert expand_factors(depth, lr, np.full_like(depth, 45.0)).shape == (3, 4, 10)
