# Own imports
from common.logger import custom_logger
from pipeline.base_stage import BaseStage


logger = custom_logger()


class Success(BaseStage):
    """Closes a finished run by writing the artifact manifest."""

    stage_name = "success"

    def __init__(self, event):
        super().__init__(event, logger=logger)

    def process_success(self):
        manifest = self.store.write_manifest()
        self.logger.info(f"run {self.run_key} finished, manifest at {manifest}")
        self.event.update({"success": True, "manifest": str(manifest)})
        return self.finish(None)
