# Own imports
from common.logger import custom_logger
from pipeline.artifacts import DATASETS, dataset_paths
from pipeline.base_stage import BaseStage
from pipeline.ingest.tracking import ingest_tracking


logger = custom_logger()


class IngestTracking(BaseStage):
    """Validates both datasets and records their row counts."""

    stage_name = "ingest"

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def ingest_tracking(self):
        inputs = []
        for dataset in DATASETS:
            paths = dataset_paths(self.config, dataset)
            inputs += [paths.tracking, paths.shots]
        summary_path = self.store.path("ingest", "summary.json")
        key = self.cached(inputs, [summary_path])
        if key is None:
            return self.event

        summary = {}
        for dataset in DATASETS:
            ingested = ingest_tracking(dataset_paths(self.config, dataset))
            summary[dataset] = ingested.summary()
            self.logger.info(f"{dataset}: {summary[dataset]}")
        self.store.put_json(summary, "ingest", "summary.json")
        self.event["ingest"] = summary
        return self.finish(key)
