# External imports
import numpy as np
import pandas as pd

# Own imports
from common.exceptions import EmptyZone, ShotModelError
from common.helpers.csv_helper import write_csv
from common.logger import custom_logger
from estimators.models import SHOT_CLASSES
from pipeline.artifacts import (
    PROBABILITY_COLUMNS,
    dataset_paths,
    factors_path,
    model_path,
    other_method,
    probabilities_path,
    read_factors,
    read_shots,
)
from pipeline.base_stage import BaseStage
from shotprob.features import feature_matrix
from shotprob.logistic import predict_shot_probs, save_model, train_logistic
from shotprob.scoring import (
    MethodData,
    ScoreReport,
    compare_fit_methods,
    gmz_make_rate,
    pool_reports,
    probability_profile,
    score_report,
)


logger = custom_logger()


class _Dataset:
    """Shots joined with the factors of one fit method."""

    def __init__(self, shots: pd.DataFrame, factors: list) -> None:
        self.shots = shots.reset_index(drop=True)
        self.factors = factors

    @classmethod
    def read(cls, shots: pd.DataFrame, factors_file, complete: bool = True) -> "_Dataset":
        """
        Joins a factors file to the shots it lists. The file follows shots-file
        order and, when `complete`, covers every shot.
        """
        table, factors = read_factors(factors_file)
        listed = shots[shots["shot_id"].isin(set(table["shot_id"]))]
        if complete and len(listed) != len(shots):
            raise ShotModelError(f"{factors_file} lacks factors for some shots")
        if list(table["shot_id"]) != list(listed["shot_id"]):
            raise ShotModelError(f"{factors_file} does not list the shots in shots-file order")
        return cls(listed, factors)

    def restrict(self, shot_ids) -> "_Dataset":
        """The shots among shot_ids, order kept."""
        mask = self.shots["shot_id"].isin(set(shot_ids)).to_numpy()
        return _Dataset(self.shots[mask], [f for f, keep in zip(self.factors, mask) if keep])

    def select(self, shot_class: str) -> tuple[list, np.ndarray]:
        mask = (self.shots["shot_class"] == shot_class).to_numpy()
        factors = [f for f, keep in zip(self.factors, mask) if keep]
        return factors, self.shots.loc[mask, "outcome"].to_numpy(int)

    def valid(self, shot_class: str) -> tuple[np.ndarray, np.ndarray]:
        factors, outcomes = self.select(shot_class)
        keep = [i for i, f in enumerate(factors) if f.valid]
        return feature_matrix([factors[i] for i in keep]), outcomes[keep]


class TrainModel(BaseStage):
    """
    Trains one make-probability model per shot class on the train set, scores
    it, and writes make probabilities for every prediction-set shot.
    """

    stage_name = "shotprob"
    config_sections = ("model", "gmz", "seed", "fit_method")

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def train_model(self):
        method = self.config.fit_method
        alternative = other_method(method)
        train_paths = dataset_paths(self.config, "train")
        predict_paths = dataset_paths(self.config, "predict")

        inputs = [train_paths.shots, predict_paths.shots]
        for dataset in ("train", "predict"):
            inputs.append(self.store.require("fit", "factors", dataset, "factors.csv"))
            inputs.append(factors_path(self.store, dataset, alternative))
        outputs = [model_path(self.store, c) for c in SHOT_CLASSES]
        outputs += [probabilities_path(self.store), self.store.path("model", "scores.json")]
        key = self.cached(inputs, outputs)
        if key is None:
            return self.event

        train_shots, predict_shots = read_shots(train_paths), read_shots(predict_paths)
        train = _Dataset.read(train_shots, factors_path(self.store, "train"))
        predict = _Dataset.read(predict_shots, factors_path(self.store, "predict"))
        train_compared = self._compared(train, train_shots, "train", alternative)
        predict_compared = self._compared(predict, predict_shots, "predict", alternative)

        p_make = np.full(len(predict_shots), np.nan)
        scores = {"per_class": {}, "with_fills": {}, "gmz": {}, "profiles": {}, "models": {}}
        for shot_class in SHOT_CLASSES:
            if not (train_shots["shot_class"] == shot_class).any():
                self.logger.warning(f"no {shot_class} shots in the train set")
                continue
            features, outcomes = train.valid(shot_class)
            model = train_logistic(features, outcomes, self.config.model, shot_class)
            if not model.converged:
                raise ShotModelError(f"{shot_class} model did not converge")
            save_model(model, model_path(self.store, shot_class))
            scores["models"][shot_class] = {
                "train_n": model.train_n,
                "loglik": model.loglik,
                "iterations": model.iterations,
            }

            class_mask = (predict_shots["shot_class"] == shot_class).to_numpy()
            factors, test_outcomes = predict.select(shot_class)
            class_probs = predict_shot_probs(model, factors)
            p_make[class_mask] = class_probs
            scores["with_fills"][shot_class] = (
                score_report(class_probs, test_outcomes, self.config.model.threshold).as_dict()
                if len(factors)
                else None
            )

            methods = {}
            for name in (method, alternative):
                train_x, train_y = train_compared[name].valid(shot_class)
                test_x, test_y = predict_compared[name].valid(shot_class)
                methods[name] = MethodData(train_x, train_y, test_x, test_y)
            table = compare_fit_methods(
                methods,
                train_compared[method].select(shot_class)[1],
                predict_compared[method].select(shot_class)[1],
                self.config.model,
                self.config.seed,
                self.jobs,
            )
            scores["per_class"][shot_class] = {
                row: report.as_dict() if report else None for row, report in table.items()
            }

            try:
                gmz = gmz_make_rate(factors, test_outcomes, self.config.gmz)
                scores["gmz"][shot_class] = {"rate": gmz.rate, "n_in_zone": gmz.n_in_zone}
            except EmptyZone:
                scores["gmz"][shot_class] = {"rate": None, "n_in_zone": 0}
            scores["profiles"][shot_class] = probability_profile(model, factors)

        if np.isnan(p_make).any():
            missing = predict_shots.loc[np.isnan(p_make), "shot_class"].iloc[0]
            raise ShotModelError(f"no trained model for prediction-set class {missing}")

        scores["table"] = self._pooled_table(scores["per_class"])
        sources = self._write_probabilities(predict_shots, p_make, predict.factors)
        scores["fill_accounting"] = {
            "total": len(predict_shots),
            "model": int((sources == "model").sum()),
            "fill": int((sources == "fill").sum()),
        }
        self.store.put_json(scores, "model", "scores.json")
        self.event["scores"] = scores["table"]
        return self.finish(key)

    def _compared(
        self, primary: _Dataset, shots: pd.DataFrame, dataset: str, alternative: str
    ) -> dict[str, _Dataset]:
        """Both methods' factors on the shots the other method was fitted on."""
        other = _Dataset.read(shots, factors_path(self.store, dataset, alternative), False)
        shot_ids = other.shots["shot_id"]
        return {self.config.fit_method: primary.restrict(shot_ids), alternative: other}

    @staticmethod
    def _pooled_table(per_class: dict) -> dict:
        rows = {}
        names = {row for table in per_class.values() for row in table}
        for row in sorted(names):
            reports = [ScoreReport(**table[row]) for table in per_class.values() if table.get(row)]
            pooled = pool_reports(reports)
            rows[row] = pooled.as_dict() if pooled else None
        return rows

    def _write_probabilities(self, shots: pd.DataFrame, p_make: np.ndarray, factors) -> np.ndarray:
        sources = np.array(["model" if f.valid else "fill" for f in factors])
        table = pd.DataFrame(
            {"shot_id": shots["shot_id"], "p_make": p_make, "source": sources},
            columns=PROBABILITY_COLUMNS,
        )
        write_csv(table, probabilities_path(self.store))
        return sources
