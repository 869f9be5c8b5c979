# Own imports
from common.logger import custom_logger
from pipeline.base_stage import BaseStage


logger = custom_logger()


class Failure(BaseStage):
    """Records the failing stage and its message on the event."""

    stage_name = "failure"

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def process_failure(self):
        failed_stage = self.event.get("failed_stage", "unknown")
        error_message = self.event.get("error_message", "No error message provided")
        self.logger.error(f"stage {failed_stage} failed: {error_message}")
        self.event.update({"success": False})
        return self.event
