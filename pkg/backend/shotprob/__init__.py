from shotprob.features import (  # noqa
    FEATURE_NAMES,
    build_features,
    expand_factors,
    feature_matrix,
)
from shotprob.logistic import (  # noqa
    ProbModel,
    load_model,
    predict_make_prob,
    predict_shot_probs,
    save_model,
    train_logistic,
)
from shotprob.scoring import (  # noqa
    GmzResult,
    MethodData,
    ScoreReport,
    compare_fit_methods,
    crossval_misclassification,
    gmz_make_rate,
    grand_mean_report,
    pool_reports,
    probability_profile,
    score_brier,
    score_logloss,
    score_misclassification,
    score_report,
)
