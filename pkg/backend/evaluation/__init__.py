from evaluation.dataset import (  # noqa
    PlayerValue,
    SplitDataset,
    class_values,
    class_weights,
    players_from_frame,
    shrunk_value,
)
from evaluation.metrics import (  # noqa
    discrimination,
    oracle_errors,
    prediction_mae,
    rmse_curve,
    rmse_vs_game_fraction,
    spearman_rank,
)
from evaluation.resampling import ResampleShot, simulated_rb_sd  # noqa
from evaluation.tables import (  # noqa
    MaeTable,
    build_mae_table,
    discrimination_table,
    player_errors,
    rank_stability,
    sd_summary,
    tune_shrinkage,
)
