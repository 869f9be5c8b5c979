# Built-in imports
from dataclasses import fields

# External imports
import pandas as pd

# Own imports
from common.exceptions import NoAttempts
from common.helpers.csv_helper import write_csv
from common.helpers.parallel_helper import ordered_map
from common.logger import custom_logger
from estimators.fg_pct import estimate_player, shrunk_true_shooting_pct, true_shooting_pct
from estimators.models import PlayerEstimate, PlayerShots
from evaluation.dataset import players_from_frame
from pipeline.artifacts import estimates_path, predicted_shots
from pipeline.base_stage import BaseStage


logger = custom_logger()

# estimates.csv names the shot class column "class"
COLUMN_NAMES = {"shot_class": "class"}
ESTIMATE_FIELDS = [f.name for f in fields(PlayerEstimate)]
ESTIMATE_COLUMNS = [COLUMN_NAMES.get(name, name) for name in ESTIMATE_FIELDS]


def player_ts(player: PlayerShots, estimates: list[PlayerEstimate]) -> dict:
    """Raw, RB and shrunk-RB true shooting for one player."""
    shrunk = {e.shot_class: e.theta_shrunk_rb for e in estimates}
    try:
        return {
            "raw": true_shooting_pct("raw", player),
            "rb": true_shooting_pct("rb", player),
            "shrunk_rb": shrunk_true_shooting_pct(player, shrunk),
        }
    except NoAttempts:
        return {"raw": None, "rb": None, "shrunk_rb": None}


class Estimate(BaseStage):
    """Per player and shot class shooting estimates on the prediction set."""

    stage_name = "estimate"
    config_sections = ("shrinkage", "optimizer")

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def estimate(self):
        probabilities = self.store.require("shotprob", "model", "probabilities.csv")
        inputs = [self.config.predict_paths.shots, probabilities]
        outputs = [estimates_path(self.store), self.store.path("estimates", "estimates.json")]
        key = self.cached(inputs, outputs)
        if key is None:
            return self.event

        players = players_from_frame(predicted_shots(self.config, self.store))
        per_player = ordered_map(
            lambda player: estimate_player(player, self.config.shrinkage, self.config.optimizer),
            list(players.values()),
            self.jobs,
        )

        rows, ts = [], {}
        for player, estimates in zip(players.values(), per_player):
            rows += [e.as_dict() for e in estimates]
            ts[player.player_id] = player_ts(player, estimates)

        table = pd.DataFrame(rows, columns=ESTIMATE_FIELDS).rename(columns=COLUMN_NAMES)
        write_csv(table, estimates_path(self.store))
        degenerate = int((table["beta_fit"] == "degenerate").sum())
        self.store.put_json(
            {
                "n_players": len(players),
                "n_rows": len(table),
                "degenerate_beta_fits": degenerate,
                "prior": [self.config.shrinkage.alpha0, self.config.shrinkage.beta0],
                "weight": self.config.shrinkage.weight,
                "true_shooting": ts,
            },
            "estimates",
            "estimates.json",
        )
        self.logger.info(
            f"estimated {len(table)} player-class rows for {len(players)} players "
            f"({degenerate} with degenerate Beta fits)"
        )
        return self.finish(key)
