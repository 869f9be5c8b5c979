from estimators.beta import (  # noqa
    beta_mean_concentration,
    beta_moments,
    beta_shapes,
    fit_beta_mle,
)
from estimators.fg_pct import (  # noqa
    estimate_class,
    estimate_player,
    estimator_variance,
    normal_ci,
    raw_fg_pct,
    rb_fg_pct,
    shrink_estimate,
    shrinkage_weight,
    shrunk_true_shooting_pct,
    true_shooting_pct,
)
from estimators.models import (  # noqa
    POINTS,
    SHOT_CLASSES,
    BetaFit,
    ClassShots,
    PlayerEstimate,
    PlayerShots,
)
from estimators.optimize import SimplexResult, nelder_mead_minimize  # noqa
