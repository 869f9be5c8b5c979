# Own imports
from common.exceptions import PipelineError
from common.logger import custom_logger
from pipeline.artifacts import DATASETS, dataset_paths
from pipeline.base_stage import BaseStage


logger = custom_logger()


class ValidateConfig(BaseStage):
    """
    Checks the resolved configuration before any stage touches data and
    writes it to the artifact directory.
    """

    stage_name = "config"

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def validate_config(self):
        self.logger.info("Starting validate_config")
        simulated = self.config.train is None and self.config.simulation.enabled

        if self.config.train is None and not self.config.simulation.enabled:
            raise PipelineError("no train dataset configured and simulation is disabled")

        if not simulated:
            for dataset in DATASETS:
                paths = dataset_paths(self.config, dataset)
                for path in (paths.tracking, paths.shots):
                    if not path.is_file():
                        raise PipelineError(f"{dataset} input {path} does not exist")

        self.config.out_dir.mkdir(parents=True, exist_ok=True)
        # Bytes must not depend on out_dir or jobs
        experiment = self.config.model_dump(mode="json", exclude={"out_dir", "jobs"})
        self.store.put_json({"config": experiment}, "config.json")

        self.event["simulated"] = simulated
        self.event["run_key"] = self.run_key
        self.logger.info(f"configuration valid, artifacts go to {self.config.out_dir}")
        return self.finish(None)
