"""Artifact layout of a pipeline run and readers shared by the stages."""

# Built-in imports
from pathlib import Path

# External imports
import numpy as np
import pandas as pd

# Own imports
from common.config import DatasetPaths, PipelineConfig
from common.helpers.artifact_helper import ArtifactStore
from common.helpers.csv_helper import read_csv
from estimators.models import SHOT_CLASSES
from trajgeom.models import ShotFactors, ShotMeasurement


DATASETS = ("train", "predict")
FACTOR_COLUMNS = [
    "shot_id",
    "depth_in",
    "lr_in",
    "angle_deg",
    "valid",
    "fill_prob",
    "reason",
    "residual_rmse",
    "n_samples",
]
PROBABILITY_COLUMNS = ["shot_id", "p_make", "source"]


def other_method(method: str) -> str:
    return "ols" if method == "bayes" else "bayes"


def dataset_paths(config: PipelineConfig, dataset: str) -> DatasetPaths:
    return config.train_paths if dataset == "train" else config.predict_paths


def comparison_sample(n_shots: int, config: PipelineConfig, dataset: str) -> np.ndarray:
    """
    Sorted indices of the shots a dataset fits with both methods: a seeded
    draw of config.comparison_shots shots, or all of them.
    """
    size = config.comparison_shots
    if size is None or size >= n_shots:
        return np.arange(n_shots)
    rng = np.random.default_rng([config.seed, DATASETS.index(dataset)])
    return np.sort(rng.choice(n_shots, size=size, replace=False))


def factors_path(store: ArtifactStore, dataset: str, alternative: str = "") -> Path:
    name = f"factors_{alternative}.csv" if alternative else "factors.csv"
    return store.path("factors", dataset, name)


def model_path(store: ArtifactStore, shot_class: str) -> Path:
    return store.path("model", f"{shot_class}.json")


def probabilities_path(store: ArtifactStore) -> Path:
    return store.path("model", "probabilities.csv")


def estimates_path(store: ArtifactStore) -> Path:
    return store.path("estimates", "estimates.csv")


def measurement_row(shot_id: str, measurement: ShotMeasurement) -> dict:
    f = measurement.factors
    fit = measurement.fit
    return {
        "shot_id": shot_id,
        "depth_in": f.depth,
        "lr_in": f.left_right,
        "angle_deg": f.entry_angle,
        "valid": int(f.valid),
        "fill_prob": f.fill_prob if not f.valid else np.nan,
        "reason": f.reason,
        "residual_rmse": fit.residual_rmse if fit is not None else np.nan,
        "n_samples": fit.n_samples if fit is not None else 0,
    }


def read_factors(path: Path) -> tuple[pd.DataFrame, list[ShotFactors]]:
    """Factors table plus the ShotFactors of every row, in file order."""
    df = read_csv(path, FACTOR_COLUMNS, dtype={"shot_id": str, "reason": str})
    df["reason"] = df["reason"].fillna("")
    factors = [
        ShotFactors(row.depth_in, row.lr_in, row.angle_deg)
        if row.valid
        else ShotFactors.invalid(int(row.fill_prob), row.reason)
        for row in df.itertuples(index=False)
    ]
    return df, factors


def read_shots(paths: DatasetPaths) -> pd.DataFrame:
    return read_csv(paths.shots, dtype={"shot_id": str, "player_id": str})


def predicted_shots(config: PipelineConfig, store: ArtifactStore) -> pd.DataFrame:
    """
    Prediction-set shots joined with their make probabilities, in shots-file
    order, with `valid` marking model-scored shots.
    """
    shots = read_shots(config.predict_paths)
    probs = read_csv(
        store.require("shotprob", "model", "probabilities.csv"),
        PROBABILITY_COLUMNS,
        dtype={"shot_id": str},
    )
    merged = shots.merge(probs, on="shot_id", how="left", validate="one_to_one")
    if merged["p_make"].isna().any():
        missing = merged.loc[merged["p_make"].isna(), "shot_id"].iloc[0]
        raise ValueError(f"shot {missing} has no make probability")
    merged["valid"] = merged["source"] == "model"
    return merged[merged["shot_class"].isin(SHOT_CLASSES)].reset_index(drop=True)
