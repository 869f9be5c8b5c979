# Built-in imports
from collections import defaultdict

# External imports
import pandas as pd

# Own imports
from common.exceptions import EvaluationError
from common.helpers.csv_helper import read_csv
from common.logger import custom_logger
from estimators.models import SHOT_CLASSES, PlayerEstimate
from evaluation.dataset import SplitDataset, players_from_frame
from evaluation.metrics import ESTIMATOR_KINDS, oracle_errors, rmse_curve
from evaluation.resampling import ResampleShot, simulated_rb_sd
from evaluation.tables import (
    build_mae_table,
    discrimination_table,
    player_errors,
    rank_stability,
    sd_summary,
)
from pipeline.artifacts import estimates_path, model_path, predicted_shots
from pipeline.base_stage import BaseStage
from pipeline.ingest.tracking import ingest_tracking
from pipeline.processing.estimate import COLUMN_NAMES, ESTIMATE_COLUMNS
from pipeline.processing.fit_trajectories import measure_records
from shotprob.logistic import load_model


logger = custom_logger()


def read_estimates(path) -> list[PlayerEstimate]:
    table = read_csv(
        path, ESTIMATE_COLUMNS, dtype={"player_id": str, "class": str, "beta_fit": str}
    )
    table = table.rename(columns={column: name for name, column in COLUMN_NAMES.items()})
    return [PlayerEstimate(**row) for row in table.to_dict(orient="records")]


class Evaluate(BaseStage):
    """
    Half-season comparisons of the estimators: MAE table, per-player errors,
    rank stability, discrimination, RMSE against game fraction and the
    simulated sd of the RB estimator.
    """

    stage_name = "evaluate"
    config_sections = (
        "evaluation",
        "shrinkage",
        "optimizer",
        "seed",
        "fit_method",
        "bayes",
        "validity",
    )

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def evaluate(self):
        probabilities = self.store.require("shotprob", "model", "probabilities.csv")
        estimates_file = self.store.require("estimate", "estimates", "estimates.csv")
        paths = self.config.predict_paths
        inputs = [paths.tracking, paths.shots, probabilities, estimates_file]
        inputs += [p for p in self._truth_paths() if p.is_file()]
        output = self.store.path("evaluation", "evaluation.json")
        key = self.cached(inputs, [output])
        if key is None:
            return self.event

        evaluation = self.config.evaluation
        df = predicted_shots(self.config, self.store)
        split = SplitDataset.from_frame(df)
        estimates = read_estimates(estimates_file)

        weight = self.config.shrinkage.weight
        optimizer = self.config.optimizer
        mae = build_mae_table(split, evaluation, self.config.shrinkage, optimizer)
        document = {
            "mae_table": mae.as_dict(),
            "player_errors": {
                c: player_errors(
                    split, c, mae.priors[c], evaluation.min_attempts, weight, optimizer
                )
                for c in SHOT_CLASSES
            },
            "rank_stability": {
                c: rank_stability(split, c, evaluation.min_attempts) for c in SHOT_CLASSES
            },
            "discrimination": discrimination_table(estimates, evaluation.min_attempts),
            "rmse_curve": self._rmse_curve(df, mae.priors[evaluation.rmse_class]),
            "sd": self._sd(estimates),
            "oracle": self._oracle(df, mae.priors[evaluation.sd_class]),
        }
        self.store.put_json(document, "evaluation", "evaluation.json")
        self.logger.info(f"evaluation written, MAE players per row: {mae.n_players}")
        return self.finish(key)

    def _truth_paths(self):
        folder = self.config.predict_paths.shots.parent
        return folder / "ground_truth.csv", folder / "players.csv"

    def _rmse_curve(self, df: pd.DataFrame, prior: tuple[float, float]) -> dict:
        evaluation = self.config.evaluation
        fractions = list(evaluation.fractions)
        if 1.0 not in fractions:
            fractions.append(1.0)
        try:
            curves = rmse_curve(
                players_from_frame(df),
                fractions,
                ESTIMATOR_KINDS,
                evaluation.rmse_seeds,
                self.config.seed,
                evaluation.rmse_class,
                evaluation.min_attempts,
                prior,
                self.config.shrinkage.weight,
                self.config.optimizer,
                self.jobs,
            )
        except EvaluationError as error:
            self.logger.warning(f"rmse curve skipped: {error}")
            return {"shot_class": evaluation.rmse_class, "fractions": fractions, "curves": None}
        return {"shot_class": evaluation.rmse_class, "fractions": fractions, "curves": curves}

    def _sd(self, estimates: list[PlayerEstimate]) -> dict:
        evaluation = self.config.evaluation
        shot_class = evaluation.sd_class
        model_file = model_path(self.store, shot_class)
        if not model_file.is_file():
            self.logger.warning(f"no {shot_class} model, simulated sd skipped")
            return sd_summary(estimates, {}, shot_class)

        model = load_model(model_file)
        ingested = ingest_tracking(self.config.predict_paths)
        records = [r for r in ingested.records if r.row.shot_class == shot_class]
        measurements = measure_records(records, self.config.fit_method, self.config, self.jobs)
        shots_by_player = defaultdict(list)
        for record, measurement in zip(records, measurements):
            shots_by_player[record.row.player_id].append(
                ResampleShot(measurement, record.ctx, record.row.outcome)
            )
        eligible = {pid: shots for pid, shots in shots_by_player.items() if len(shots) >= 2}
        simulated = simulated_rb_sd(
            model,
            eligible,
            evaluation.sd_repeats,
            self.config.seed,
            evaluation.sd_covariance_scale,
            self.config.validity.tangency_tol,
            self.jobs,
        )
        return sd_summary(estimates, simulated, shot_class)

    def _oracle(self, df: pd.DataFrame, prior: tuple[float, float]):
        """Errors against the simulator's hidden truth, when it is available."""
        truth_file, players_file = self._truth_paths()
        if not (truth_file.is_file() and players_file.is_file()):
            return None
        truth = read_csv(truth_file, ["shot_id", "true_p"], dtype={"shot_id": str})
        roster = read_csv(players_file, ["player_id", "true_theta"], dtype={"player_id": str})
        with_truth = df.merge(truth[["shot_id", "true_p"]], on="shot_id", how="inner")
        try:
            return oracle_errors(
                players_from_frame(with_truth),
                dict(zip(roster["player_id"], roster["true_theta"])),
                players_from_frame(with_truth.assign(p_make=with_truth["true_p"])),
                prior,
                self.config.shrinkage.weight,
                self.config.optimizer,
            )
        except EvaluationError as error:
            self.logger.warning(f"oracle skipped: {error}")
            return None
