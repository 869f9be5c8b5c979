from trajgeom.crossing import (  # noqa
    compute_shot_factors,
    crossing_for_coefficients,
    rim_crossing,
)
from trajgeom.fitting import (  # noqa
    as_sample_array,
    fit_horizontal_path,
    fit_quadratic_bayes,
    fit_quadratic_ols,
)
from trajgeom.models import (  # noqa
    LinePath,
    QuadraticFit,
    ShotContext,
    ShotFactors,
    ShotMeasurement,
    TrackingSample,
    TrajectoryValidity,
)
from trajgeom.validity import measure_shot, validate_trajectory  # noqa
