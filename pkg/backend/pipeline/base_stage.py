# Built-in imports
from pathlib import Path
from typing import Iterable, Optional

# External imports
from aws_lambda_powertools import Logger

# Own imports
from common.config import PipelineConfig
from common.helpers.artifact_helper import ArtifactStore
from common.logger import custom_logger


class BaseStage:
    """
    Base helpers/attributes for every pipeline stage. A stage receives the run
    event (a plain dict carrying the resolved config), does its work and
    returns the event, updated with what later stages need.
    """

    stage_name: str = ""
    config_sections: tuple[str, ...] = ()

    def __init__(self, event: dict, logger: Optional[Logger] = None):
        self.event = event
        self.logger = logger or custom_logger()

        self.config = PipelineConfig.model_validate(self.event["config"])
        self.run_key: str = self.event.get("run_key") or self.config.run_key()
        self.jobs: int = self.config.jobs
        self.store = ArtifactStore(self.config.out_dir)

        self.logger.append_keys(run_key=self.run_key, stage=self.stage_name)
        self.logger.info(f"{self.__class__.__name__} stage starting")
        self.logger.debug(self.event, message_details="Received Event")

    def cached(self, inputs: Iterable[Path], outputs: Iterable[Path]) -> Optional[str]:
        """
        Returns None when the stage can be skipped, otherwise the cache key to
        record once the stage finishes.
        """
        key = self.store.cache_key(inputs, self.config.section_hash(*self.config_sections))
        if self.store.cache_hit(self.stage_name, key, outputs):
            self.logger.info(f"cache hit for stage {self.stage_name}, skipping")
            self.event.setdefault("cached_stages", []).append(self.stage_name)
            return None
        return key

    def finish(self, key: Optional[str]) -> dict:
        if key is not None:
            self.store.record_cache(self.stage_name, key)
        self.event.setdefault("completed_stages", []).append(self.stage_name)
        return self.event
