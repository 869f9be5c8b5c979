# Built-in imports
from collections import Counter
from typing import Sequence

# External imports
import pandas as pd

# Own imports
from common.config import PipelineConfig
from common.helpers.csv_helper import write_csv
from common.logger import custom_logger
from pipeline.artifacts import (
    DATASETS,
    FACTOR_COLUMNS,
    comparison_sample,
    dataset_paths,
    factors_path,
    measurement_row,
    other_method,
)
from pipeline.base_stage import BaseStage
from pipeline.ingest.tracking import ShotRecord, ingest_tracking
from trajgeom.batch import measure_shots
from trajgeom.models import ShotMeasurement


logger = custom_logger()


def measure_records(
    records: Sequence[ShotRecord], method: str, config: PipelineConfig, jobs: int = 1
) -> list[ShotMeasurement]:
    return measure_shots(
        [r.samples for r in records],
        [r.ctx for r in records],
        [r.row.outcome for r in records],
        method=method,
        bayes_cfg=config.bayes,
        validity_cfg=config.validity,
        jobs=jobs,
    )


def factor_table(
    records: Sequence[ShotRecord], method: str, config: PipelineConfig, jobs: int = 1
) -> pd.DataFrame:
    """One factors row per shot, valid or not, in the order given."""
    measurements = measure_records(records, method, config, jobs)
    rows = [measurement_row(r.shot_id, m) for r, m in zip(records, measurements)]
    return pd.DataFrame(rows, columns=FACTOR_COLUMNS)


def fit_summary(table: pd.DataFrame) -> dict:
    valid = int(table["valid"].sum())
    reasons = Counter(r for r in table.loc[table["valid"] == 0, "reason"])
    return {
        "total": len(table),
        "valid": valid,
        "invalid": len(table) - valid,
        "reasons": dict(sorted(reasons.items())),
        "depth_sd": float(table.loc[table["valid"] == 1, "depth_in"].std()),
    }


class FitTrajectories(BaseStage):
    """
    Turns every shot's tracking samples into rim-plane shot factors with the
    configured fit method. A seeded sample of each dataset is also fitted with
    the other method, for the comparison of the two.
    """

    stage_name = "fit"
    config_sections = ("bayes", "validity", "fit_method", "comparison_shots", "seed")

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def fit_trajectories(self):
        method = self.config.fit_method
        alternative = other_method(method)

        inputs, outputs = [], []
        for dataset in DATASETS:
            paths = dataset_paths(self.config, dataset)
            inputs += [paths.tracking, paths.shots]
            outputs += [
                factors_path(self.store, dataset),
                factors_path(self.store, dataset, alternative),
            ]
        outputs.append(self.store.path("factors", "summary.json"))
        key = self.cached(inputs, outputs)
        if key is None:
            return self.event

        summary = {}
        for dataset in DATASETS:
            records = ingest_tracking(dataset_paths(self.config, dataset)).records
            table = factor_table(records, method, self.config, self.jobs)
            write_csv(table, factors_path(self.store, dataset))

            sample = comparison_sample(len(records), self.config, dataset)
            compared = factor_table(
                [records[i] for i in sample], alternative, self.config, self.jobs
            )
            write_csv(compared, factors_path(self.store, dataset, alternative))

            summary[dataset] = {method: fit_summary(table)}
            if len(sample) < len(records):
                sampled = table.iloc[sample].reset_index(drop=True)
                summary[dataset][f"{method}_sample"] = fit_summary(sampled)
            summary[dataset][alternative] = fit_summary(compared)
            for name, counts in summary[dataset].items():
                self.logger.info(
                    f"{dataset}/{name}: {counts['valid']} of {counts['total']} shots valid"
                )

        self.store.put_json({"method": method, "datasets": summary}, "factors", "summary.json")
        self.event["fit_summary"] = summary
        return self.finish(key)
